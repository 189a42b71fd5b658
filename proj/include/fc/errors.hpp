#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fc {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

struct UnknownSymbol : std::invalid_argument {
    explicit UnknownSymbol(const std::string& name)
        : std::invalid_argument("unknown symbol: " + name), symbol(name) {}
    std::string symbol;
};

struct SingularSystem : std::runtime_error {
    explicit SingularSystem(int rank_found)
        : std::runtime_error("singular linear system, rank " + std::to_string(rank_found)),
          rank(rank_found) {}
    int rank;
};

// A shift chain hit a parameter value at which the required operator does
// not exist (vanishing leading factor or vanishing discriminant factor).
struct ExceptionalParameter : std::runtime_error {
    ExceptionalParameter(std::vector<std::string> vanishing, int step_index = -1)
        : std::runtime_error(describe(vanishing, step_index)),
          factors(std::move(vanishing)),
          step(step_index) {}
    std::vector<std::string> factors;
    int step;

  private:
    static std::string describe(const std::vector<std::string>& fs, int step) {
        std::string s = "exceptional parameter values; vanishing:";
        for (const auto& f : fs) s += " " + f;
        if (step >= 0) s += " (chain step " + std::to_string(step) + ")";
        return s;
    }
};

struct PoleInParameter : std::runtime_error {
    explicit PoleInParameter(const std::string& what) : std::runtime_error(what) {}
};

struct UnreducibleMonomial : std::runtime_error {
    explicit UnreducibleMonomial(const std::string& mono)
        : std::runtime_error("theta monomial outside the reduction closure: " + mono) {}
};

struct EvaluationFailure : std::runtime_error {
    explicit EvaluationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          pos(position) {}
    std::size_t pos;
};

}  // namespace fc
