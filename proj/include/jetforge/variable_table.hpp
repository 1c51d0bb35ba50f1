#pragma once

#include <jetforge/errors.hpp>

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace jetforge {

/// Variable identifier: a base name plus a jet level. Level 0 is the base
/// variable itself and prints as "x"; level l >= 1 prints as "x(l)".
struct VarId {
    std::string base;
    int level = 0;

    std::string str() const {
        if (level == 0) return base;
        return base + "(" + std::to_string(level) + ")";
    }

    bool operator==(const VarId&) const = default;
    auto operator<=>(const VarId&) const = default;
};

/// Ordered list of distinct variable identifiers. The order is total and
/// fixed at construction; every polynomial over the table indexes its
/// exponent vector by table position.
class VariableTable {
public:
    explicit VariableTable(std::vector<VarId> vars) : vars_(std::move(vars)) {
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto [it, fresh] = index_.emplace(vars_[i], i);
            if (!fresh) throw table_mismatch_error("duplicate variable " + vars_[i].str());
        }
    }

    static std::shared_ptr<const VariableTable> make(std::vector<VarId> vars) {
        return std::make_shared<const VariableTable>(std::move(vars));
    }

    /// Table of base variables (all level 0).
    static std::shared_ptr<const VariableTable> make_base(const std::vector<std::string>& names) {
        std::vector<VarId> vars;
        vars.reserve(names.size());
        for (const auto& n : names) vars.push_back({n, 0});
        return make(std::move(vars));
    }

    std::size_t size() const { return vars_.size(); }
    const VarId& var(std::size_t i) const { return vars_[i]; }
    const std::vector<VarId>& vars() const { return vars_; }

    /// Position of a variable, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const VarId& v) const {
        auto it = index_.find(v);
        return it == index_.end() ? npos : it->second;
    }
    std::size_t find(const std::string& base, int level = 0) const { return find(VarId{base, level}); }

    bool operator==(const VariableTable& o) const { return vars_ == o.vars_; }

private:
    std::vector<VarId> vars_;
    std::map<VarId, std::size_t> index_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

inline bool same_table(const TablePtr& a, const TablePtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_table(const TablePtr& a, const TablePtr& b) {
    if (!same_table(a, b)) throw table_mismatch_error("operands live over different variable tables");
}

} // namespace jetforge
