#pragma once

// Exact truncated power series in the half-nome u = q^{1/2} with rational
// coefficients, and the special series needed to verify the
// three-triangular-numbers identities coefficient by coefficient.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace appell::qexact {

using Rational = boost::multiprecision::cpp_rational;

// Coefficients of u^0 .. u^{trunc-1}. Immutable once built; arithmetic
// between series of different truncation yields the smaller truncation.
class USeries {
public:
    // Throws std::invalid_argument when trunc == 0.
    explicit USeries(std::size_t trunc);
    USeries(std::size_t trunc, std::vector<Rational> coeffs);

    static USeries monomial(std::size_t trunc, std::size_t exponent, Rational coeff = 1);

    std::size_t trunc() const noexcept { return coeffs_.size(); }
    const Rational& operator[](std::size_t k) const { return coeffs_.at(k); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    USeries with_coeff(std::size_t k, Rational value) const;
    USeries truncated(std::size_t trunc) const;

    friend USeries operator+(const USeries& l, const USeries& r);
    friend USeries operator-(const USeries& l, const USeries& r);
    friend USeries operator-(const USeries& s);
    friend USeries operator*(const USeries& l, const USeries& r);
    friend USeries operator*(const Rational& c, const USeries& s);
    friend bool operator==(const USeries& l, const USeries& r);

    // Sum of the retained terms at a numeric u.
    std::complex<double> evaluate(std::complex<double> u) const;

private:
    std::vector<Rational> coeffs_;
};

inline USeries series_add(const USeries& l, const USeries& r) { return l + r; }
inline USeries series_mul(const USeries& l, const USeries& r) { return l * r; }
inline USeries series_neg(const USeries& s) { return -s; }
inline USeries series_scale(const Rational& c, const USeries& s) { return c * s; }

std::ostream& operator<<(std::ostream& os, const USeries& s);

/// Smallest exponent where the two series differ, over the common truncation.
std::optional<std::size_t> first_mismatch(const USeries& l, const USeries& r);

/// 1/(1 - sign u^k) = sum_j sign^j u^{jk}. Throws std::invalid_argument for
/// k == 0 or sign not in {+1, -1}.
USeries geom_inverse(int sign, std::size_t k, std::size_t trunc);

enum class ThetaNull {
    plus,  // theta(1)        = sum_n u^{n^2}
    minus, // theta(-1)       = sum_n (-1)^n u^{n^2}
    half,  // theta(q^{1/2})  = sum_n u^{n^2+n}
};
USeries theta_null(ThetaNull which, std::size_t trunc);

/// sum_{n>=0} u^{n^2+n} = sum_{n>=0} q^{(n^2+n)/2}.
USeries triangular_gf(std::size_t trunc);

enum class KappaSpecial {
    pp,     // kappa(q^{1/2}, -1)
    mp,     // kappa(-q^{1/2}, 1)
    m_half, // kappa(-1, q^{1/2})
};
USeries kappa_special_series(KappaSpecial which, std::size_t trunc);

// The six special series the two identities are built from.
struct SpecialValues {
    USeries theta_plus;
    USeries theta_minus;
    USeries theta_half;
    USeries kappa_pp;
    USeries kappa_mp;
    USeries kappa_m_half;

    static SpecialValues compute(std::size_t trunc);
};

struct Sides {
    USeries lhs;
    USeries rhs;
};

// theta(1) kappa(q^{1/2},-1) + theta(-1) kappa(-q^{1/2},1) = theta(q^{1/2})^3 / 2
Sides for1_sides(const SpecialValues& sv);
// theta(q^{1/2})^3 kappa(-1,q^{1/2}) = theta(-1)^3 kappa(q^{1/2},-1) + theta(1)^3 kappa(-q^{1/2},1)
Sides for2_sides(const SpecialValues& sv);

struct ExactVerdict {
    bool pass = true;
    std::optional<std::size_t> first_failing_exponent; // u-exponent
};

ExactVerdict compare(const Sides& sides);

/// Throw std::invalid_argument when trunc < 2.
ExactVerdict check_for1_exact(std::size_t trunc);
ExactVerdict check_for2_exact(std::size_t trunc);

/// sum_{n>=0, l in Z} (-1)^n q^{n^2+n-2nl+2l^2} (1 + q^{2l+1}) / (1 - q^{2n+1}).
/// extra_shell widens the enumeration window beyond the proven bound.
USeries double_sum_series(std::size_t trunc, int extra_shell = 0);

/// sum_{n>=0, 0<=j<=2n} q^{2n^2+2n-j(j+1)/2} (1 + q^{2n+1}) / (1 - q^{2n+1}).
USeries andrews_series(std::size_t trunc, int extra_shell = 0);

/// r3(m) for 0 <= m < M: ordered triples of triangular numbers summing to m.
struct TriangularCounts {
    std::vector<std::uint64_t> counts;
};
TriangularCounts triangular_counts_bruteforce(std::size_t M);

/// Rows "exponent,numerator,denominator" for every retained coefficient.
void write_csv(std::ostream& os, const USeries& s);

} // namespace appell::qexact
