#pragma once

#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fc/reduction.hpp"

namespace fc {

// Integer shifts requested for (a, b, c1, c2, c3), in that order.
struct ShiftVector {
    int na = 0, nb = 0, m1 = 0, m2 = 0, m3 = 0;

    int component(int i) const;
    int total_steps() const;  // sum of absolute entries
    bool is_zero() const { return total_steps() == 0; }
};

// F_C(oldParams) = sum_s Q[s] * theta^BASIS[s] F_C(newParams).
struct ReductionResult {
    NormalOperator Q;
    ParameterVector newParams;
};

enum class StepDirection { up, down };

// Closed-form unit operators: a,b only step up (U+ = (1/x)(x + th1+th2+th3)),
// c_i only steps down (U- = (1/(c_i-1))(c_i-1 + th_i)). Throws
// ExceptionalParameter naming the leading factor when it vanishes.
NormalOperator direct_operator(int which, StepDirection dir, const ParameterVector& params);

// Distinct irreducible factors of the inverse-operator parameter denominator
// for stepping `which`, instantiated at the given parameter values.
std::vector<RationalFunction> ddiscr_factors(int which, const ParameterVector& params);

// The same denominator as one polynomial in the generic symbols, with the
// multiplicities of the ordered-pair product form.
Polynomial ddiscr_product(int which);

// Singular-surface polynomial in z: common z-part bound for every inverse
// operator's denominator.
Polynomial dcont_polynomial();

// Memoizing front end: reduction tables and inverse operators are cached per
// canonical parameter string, safe for concurrent use. If FC_CACHE_DIR is set,
// tables are persisted there as canonical text, content-addressed by the
// parameter string.
class Engine {
  public:
    std::shared_ptr<const ReductionTable> table_for(const ParameterVector& params);

    NormalOperator inverse_operator(int which, const ParameterVector& params);
    NormalOperator inverse_operator(int which, const ParameterVector& params,
                                    const ReductionTable& table);

    // Walks the shift one unit at a time in the fixed order a, b, c1, c2, c3,
    // composing and normal-reducing after each step.
    ReductionResult index_change(const ShiftVector& shift, const ParameterVector& params);

    // Advisory scan: evaluates every inverse-denominator factor met along the
    // chain (both directions, conservatively) and lists the vanishing ones by
    // their generic names. Never throws.
    std::vector<std::string> check_exceptional(const ShiftVector& shift,
                                               const ParameterVector& params) const;

  private:
    std::shared_ptr<const ReductionTable> load_persisted(const std::string& key) const;
    void persist(const ReductionTable& table) const;

    mutable std::shared_mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<const ReductionTable>> tables_;
    std::unordered_map<std::string, NormalOperator> inverses_;
};

}  // namespace fc
