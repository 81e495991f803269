#ifndef CSMOOTH_SEMIRING_HPP
#define CSMOOTH_SEMIRING_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "csmooth/circuit.hpp"

namespace csmooth {

// Weighted boolean semantics are parameterized by a commutative semiring
// (plus, times, zero, one), optionally with subtraction and division.
// Instances are static-method bundles; generic code is templated on them
// and runtime selection happens through with_semiring below.

struct ProbSemiring {
    using Value = double;
    static constexpr bool has_division = true;
    static constexpr const char* name = "prob";
    static Value zero() { return 0.0; }
    static Value one() { return 1.0; }
    static Value plus(Value a, Value b) { return a + b; }
    static Value times(Value a, Value b) { return a * b; }
    static Value minus(Value a, Value b) { return a - b; }
    static Value divide(Value a, Value b) { return a / b; }
    static Value from_real(double w) { return w; }
    static double to_real(Value v) { return v; }
    static bool is_positive(Value v) { return v > 0.0; }
    static bool is_zero(Value v) { return v == 0.0; }
};

// Model counting over arbitrary-precision integers; no division.
struct CountSemiring {
    using Value = boost::multiprecision::cpp_int;
    static constexpr bool has_division = false;
    static constexpr const char* name = "count";
    static Value zero() { return 0; }
    static Value one() { return 1; }
    static Value plus(const Value& a, const Value& b) { return a + b; }
    static Value times(const Value& a, const Value& b) { return a * b; }
    static Value from_real(double w) {
        double r = std::round(w);
        if (std::abs(w - r) > 1e-9) throw std::invalid_argument("count semiring needs integer weights");
        return Value(static_cast<long long>(r));
    }
    static double to_real(const Value& v) { return v.convert_to<double>(); }
    static bool is_positive(const Value& v) { return v > 0; }
    static bool is_zero(const Value& v) { return v == 0; }
};

// Max-weight model scoring; weights are already log-domain scores.
struct MaxPlusSemiring {
    using Value = double;
    static constexpr bool has_division = false;
    static constexpr const char* name = "maxplus";
    static Value zero() { return -std::numeric_limits<double>::infinity(); }
    static Value one() { return 0.0; }
    static Value plus(Value a, Value b) { return a > b ? a : b; }
    static Value times(Value a, Value b) { return a + b; }
    static Value from_real(double w) { return w; }
    static double to_real(Value v) { return v; }
    static bool is_positive(Value v) { return v > zero(); }
    static bool is_zero(Value v) { return v == zero(); }
};

// Numerically stable twin of ProbSemiring in log space: from_real takes a
// probability-scale weight and stores its log.
struct LogProbSemiring {
    using Value = double;
    static constexpr bool has_division = true;
    static constexpr const char* name = "logprob";
    static Value zero() { return -std::numeric_limits<double>::infinity(); }
    static Value one() { return 0.0; }
    static Value plus(Value a, Value b) {  // log-sum-exp
        if (a == zero()) return b;
        if (b == zero()) return a;
        Value hi = a > b ? a : b, lo = a > b ? b : a;
        return hi + std::log1p(std::exp(lo - hi));
    }
    static Value times(Value a, Value b) { return a + b; }
    static Value minus(Value a, Value b) {  // log-diff-exp, needs a >= b
        if (b == zero()) return a;
        if (a < b) throw std::domain_error("logprob minus of smaller value");
        double d = -std::expm1(b - a);
        return d <= 0.0 ? zero() : a + std::log(d);
    }
    static Value divide(Value a, Value b) { return a - b; }
    static Value from_real(double w) { return std::log(w); }
    static double to_real(Value v) { return std::exp(v); }
    static bool is_positive(Value v) { return v > zero(); }
    static bool is_zero(Value v) { return v == zero(); }
};

enum class SemiringName : std::uint8_t { Prob, Count, MaxPlus, LogProb };

// Throws std::invalid_argument on unknown names.
SemiringName semiring_from_name(const std::string& name);

template <class F>
decltype(auto) with_semiring(SemiringName name, F&& f) {
    switch (name) {
        case SemiringName::Prob: return f(ProbSemiring{});
        case SemiringName::Count: return f(CountSemiring{});
        case SemiringName::MaxPlus: return f(MaxPlusSemiring{});
        case SemiringName::LogProb: return f(LogProbSemiring{});
    }
    throw std::invalid_argument("unknown semiring");
}

// Literal weights, dense over all 2n literals (1-based variable index).
template <class S>
struct LiteralWeights {
    std::vector<typename S::Value> pos, neg;

    explicit LiteralWeights(std::uint32_t num_vars)
        : pos(num_vars + 1, S::one()), neg(num_vars + 1, S::one()) {}

    const typename S::Value& operator()(Literal lit) const {
        return lit.positive() ? pos[lit.var()] : neg[lit.var()];
    }
    typename S::Value& operator()(Literal lit) {
        return lit.positive() ? pos[lit.var()] : neg[lit.var()];
    }
    std::uint32_t num_vars() const { return static_cast<std::uint32_t>(pos.size() - 1); }
};

// Real-valued weights as read from a weights file; literals not present in
// the file fall back to the semiring's one.
struct WeightTable {
    std::vector<double> pos, neg;
    std::vector<bool> pos_set, neg_set;

    explicit WeightTable(std::uint32_t num_vars)
        : pos(num_vars + 1, 1.0), neg(num_vars + 1, 1.0),
          pos_set(num_vars + 1, false), neg_set(num_vars + 1, false) {}

    void set(Literal lit, double w) {
        if (lit.positive()) { pos[lit.var()] = w; pos_set[lit.var()] = true; }
        else { neg[lit.var()] = w; neg_set[lit.var()] = true; }
    }
    std::size_t missing_count() const {
        std::size_t k = 0;
        for (std::size_t v = 1; v < pos.size(); ++v) k += !pos_set[v] + !neg_set[v];
        return k;
    }

    template <class S>
    LiteralWeights<S> convert() const {
        LiteralWeights<S> w(static_cast<std::uint32_t>(pos.size() - 1));
        for (std::uint32_t v = 1; v < pos.size(); ++v) {
            if (pos_set[v]) w.pos[v] = S::from_real(pos[v]);
            if (neg_set[v]) w.neg[v] = S::from_real(neg[v]);
        }
        return w;
    }
};

// Weight file: one `<signed-literal> <decimal>` pair per line, '#'/'c '
// comments allowed.
WeightTable parse_weights(std::istream& in, std::uint32_t num_vars);
WeightTable load_weights_file(const std::string& path, std::uint32_t num_vars);

// Tolerant comparison used throughout the floating-point test surface:
// relative tolerance with an absolute floor of 1e-12.
inline bool approx_equal(double a, double b, double rel_tol) {
    double diff = std::abs(a - b);
    double scale = std::max(std::abs(a), std::abs(b));
    return diff <= std::max(1e-12, rel_tol * scale);
}

}  // namespace csmooth

#endif
