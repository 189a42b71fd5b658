#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fc/errors.hpp"

namespace fc {

// Append-only registry mapping symbol names to dense ids. The eight core
// symbols plus eps are registered up front so ids (and hence the monomial
// order) are stable regardless of what an expression mentions first.
class SymbolTable {
  public:
    SymbolTable() {
        for (const char* s : {"a", "b", "c1", "c2", "c3", "z1", "z2", "z3", "eps"})
            register_symbol(s);
    }

    int register_symbol(const std::string& name) {
        std::unique_lock lk(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    std::optional<int> find(const std::string& name) const {
        std::shared_lock lk(mu_);
        auto it = ids_.find(name);
        if (it == ids_.end()) return std::nullopt;
        return it->second;
    }

    int require(const std::string& name) const {
        auto id = find(name);
        if (!id) throw UnknownSymbol(name);
        return *id;
    }

    std::string name(int id) const {
        std::shared_lock lk(mu_);
        return names_.at(static_cast<std::size_t>(id));
    }

    std::size_t size() const {
        std::shared_lock lk(mu_);
        return names_.size();
    }

  private:
    mutable std::shared_mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> ids_;
};

// One table per process; expressions from every module share it.
SymbolTable& symtab();

inline constexpr int SYM_A = 0;
inline constexpr int SYM_B = 1;
inline constexpr int SYM_C1 = 2;
inline constexpr int SYM_C2 = 3;
inline constexpr int SYM_C3 = 4;
inline constexpr int SYM_Z1 = 5;
inline constexpr int SYM_Z2 = 6;
inline constexpr int SYM_Z3 = 7;
inline constexpr int SYM_EPS = 8;

}  // namespace fc
