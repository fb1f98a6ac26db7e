#include <doctest.h>

#include <complex>
#include <random>
#include <sstream>

#include "appell/kernel.hpp"
#include "appell/qexact.hpp"

using namespace appell::qexact;

namespace {

USeries poly(std::size_t trunc, std::initializer_list<int> c)
{
    std::vector<Rational> v;
    for (int x : c) {
        v.emplace_back(x);
    }
    return USeries(trunc, std::move(v));
}

USeries random_sparse(std::mt19937_64& rng, std::size_t trunc)
{
    std::uniform_int_distribution<int> coin(0, 3), num(-9, 9), den(1, 5);
    std::vector<Rational> v(trunc);
    for (auto& x : v) {
        if (coin(rng) == 0) {
            x = Rational(num(rng), den(rng));
        }
    }
    return USeries(trunc, std::move(v));
}

double rel(std::complex<double> l, std::complex<double> r)
{
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

} // namespace

TEST_CASE("construction")
{
    CHECK_THROWS_AS(USeries(0), std::invalid_argument);
    const USeries s(4, {Rational(1), Rational(2), Rational(3), Rational(4), Rational(5)});
    CHECK(s.trunc() == 4);
    CHECK(s[3] == 4);
    CHECK(USeries::monomial(3, 5) == USeries(3));
    CHECK(USeries::monomial(3, 1, Rational(1, 2))[1] == Rational(1, 2));
    CHECK(s.truncated(2) == poly(2, {1, 2}));
}

TEST_CASE("ring operations")
{
    CHECK(poly(3, {1, 1}) * poly(3, {1, -1}) == poly(3, {1, 0, -1}));
    CHECK(series_mul(poly(5, {1, 1, 1, 1, 1}), poly(5, {1, -1})) == poly(5, {1}));
    CHECK(series_add(poly(3, {1, 2}), series_neg(poly(3, {1, 2}))) == USeries(3));
    CHECK(series_scale(Rational(1, 3), poly(2, {3, 6})) == poly(2, {1, 2}));
    // Mixed truncations keep the smaller one.
    CHECK((poly(5, {1, 1}) + poly(3, {0, 1})).trunc() == 3);
    CHECK((poly(5, {1, 1}) * poly(3, {0, 1})) == poly(3, {0, 1, 1}));
    CHECK(poly(4, {1, 2}) - poly(4, {0, 1, 3}) == poly(4, {1, 1, -3}));
}

TEST_CASE("ring axioms on random sparse inputs")
{
    std::mt19937_64 rng(42);
    for (int i = 0; i < 20; ++i) {
        const std::size_t n = 1 + i * 3;
        const auto a = random_sparse(rng, n), b = random_sparse(rng, n), c = random_sparse(rng, n);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a + b) + c == a + (b + c));
    }
}

TEST_CASE("product coefficients depend only on lower coefficients")
{
    std::mt19937_64 rng(8);
    const auto a = random_sparse(rng, 20), b = random_sparse(rng, 20);
    const auto full = a * b;
    CHECK((a.truncated(7) * b.truncated(7)) == full.truncated(7));
}

TEST_CASE("geom_inverse")
{
    CHECK(geom_inverse(+1, 1, 4) == poly(4, {1, 1, 1, 1}));
    CHECK(geom_inverse(-1, 2, 5) == poly(5, {1, 0, -1, 0, 1}));
    for (std::size_t k = 1; k < 6; ++k) {
        USeries one_minus = USeries::monomial(12, 0) - USeries::monomial(12, k);
        CHECK(geom_inverse(+1, k, 12) * one_minus == USeries::monomial(12, 0));
        USeries one_plus = USeries::monomial(12, 0) + USeries::monomial(12, k);
        CHECK(geom_inverse(-1, k, 12) * one_plus == USeries::monomial(12, 0));
    }
    CHECK_THROWS_AS(geom_inverse(+1, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(geom_inverse(2, 1, 4), std::invalid_argument);
}

TEST_CASE("theta null values")
{
    CHECK(theta_null(ThetaNull::plus, 5) == poly(5, {1, 2, 0, 0, 2}));
    CHECK(theta_null(ThetaNull::minus, 5) == poly(5, {1, -2, 0, 0, 2}));
    CHECK(theta_null(ThetaNull::half, 7) == poly(7, {2, 0, 2, 0, 0, 0, 2}));
    CHECK(theta_null(ThetaNull::half, 40) == Rational(2) * triangular_gf(40));
}

TEST_CASE("triangular generating function")
{
    const auto t = triangular_gf(7);
    CHECK(t == poly(7, {1, 0, 1, 0, 0, 0, 1}));
    const auto t60 = triangular_gf(60);
    for (std::size_t k = 1; k < 60; k += 2) {
        CHECK(t60[k] == 0);
    }
}

TEST_CASE("kappa special series")
{
    CHECK(kappa_special_series(KappaSpecial::pp, 4)[0] == 2);
    CHECK(kappa_special_series(KappaSpecial::mp, 4)[0] == 2);
    CHECK(kappa_special_series(KappaSpecial::m_half, 4)[0] == Rational(1, 2));

    // Each series summed at u = 0.3 agrees with the numeric kappa.
    const double u = 0.3;
    const appell::num::Nome nome{u};
    const std::size_t N = 120;
    CHECK(rel(kappa_special_series(KappaSpecial::pp, N).evaluate(u), appell::num::kappa(u, -1.0, nome)) < 1e-9);
    CHECK(rel(kappa_special_series(KappaSpecial::mp, N).evaluate(u), appell::num::kappa(-u, 1.0, nome)) < 1e-9);
    CHECK(rel(kappa_special_series(KappaSpecial::m_half, N).evaluate(u), appell::num::kappa(-1.0, u, nome)) < 1e-9);
    CHECK(rel(theta_null(ThetaNull::plus, N).evaluate(u), appell::num::theta(1.0, nome)) < 1e-9);
    CHECK(rel(theta_null(ThetaNull::minus, N).evaluate(u), appell::num::theta(-1.0, nome)) < 1e-9);
    CHECK(rel(theta_null(ThetaNull::half, N).evaluate(u), appell::num::theta(u, nome)) < 1e-9);
}

TEST_CASE("FOR1 and FOR2 coefficient-exact")
{
    CHECK(check_for1_exact(2).pass);
    CHECK(check_for2_exact(2).pass);
    const auto sv2 = SpecialValues::compute(2);
    CHECK(for1_sides(sv2).lhs[0] == 4);
    CHECK(for1_sides(sv2).rhs[0] == 4);
    CHECK(for2_sides(sv2).lhs[0] == 4);
    CHECK(for2_sides(sv2).rhs[0] == 4);

    const auto v1 = check_for1_exact(80);
    const auto v2 = check_for2_exact(80);
    CHECK(v1.pass);
    CHECK(v2.pass);
    CHECK_FALSE(v1.first_failing_exponent.has_value());
    CHECK_THROWS_AS(check_for1_exact(1), std::invalid_argument);
    CHECK_THROWS_AS(check_for2_exact(0), std::invalid_argument);
}

TEST_CASE("perturbing theta(1) is detected at the perturbed exponent")
{
    for (std::size_t k : {0u, 4u, 9u, 25u}) {
        auto sv = SpecialValues::compute(40);
        sv.theta_plus = sv.theta_plus.with_coeff(k, sv.theta_plus[k] + 1);
        const auto v1 = compare(for1_sides(sv));
        const auto v2 = compare(for2_sides(sv));
        CHECK_FALSE(v1.pass);
        CHECK_FALSE(v2.pass);
        CHECK(v1.first_failing_exponent == k);
        CHECK(v2.first_failing_exponent == k);
    }
}

TEST_CASE("three triangular numbers")
{
    const auto r = triangular_counts_bruteforce(10);
    const std::vector<std::uint64_t> expect{1, 3, 3, 4, 6, 3, 6, 9, 3, 7};
    CHECK(r.counts == expect);
    CHECK_THROWS_AS(triangular_counts_bruteforce(0), std::invalid_argument);

    const std::size_t Q = 41;
    const std::size_t trunc = 2 * Q - 1;
    const auto t = triangular_gf(trunc);
    const auto t3 = t * t * t;
    const auto brute = triangular_counts_bruteforce(Q);
    for (std::size_t m = 0; m < Q; ++m) {
        CHECK(t3[2 * m] == brute.counts[m]);
        CHECK(brute.counts[m] >= 1);
    }
    CHECK(double_sum_series(trunc) == t3);
    CHECK(andrews_series(trunc) == t3);
    CHECK(double_sum_series(80) == andrews_series(80));
}

TEST_CASE("double sum and Andrews series")
{
    CHECK(double_sum_series(3)[0] == 1);
    CHECK(andrews_series(3)[0] == 1);
    const auto an = andrews_series(81);
    for (std::size_t k = 0; k < 81; k += 2) {
        CHECK(an[k] >= 1);
    }
    // One more shell of the enumeration window changes nothing retained.
    CHECK(double_sum_series(81, 1) == double_sum_series(81));
    CHECK(double_sum_series(81, 3) == double_sum_series(81));
    CHECK(andrews_series(81, 2) == andrews_series(81));
}

TEST_CASE("csv and stream output")
{
    std::ostringstream os;
    write_csv(os, poly(3, {1, 0, -2}).with_coeff(1, Rational(1, 2)));
    CHECK(os.str() == "0,1,1\n1,1,2\n2,-2,1\n");

    std::ostringstream text;
    text << poly(3, {1, 0, 2});
    CHECK(text.str() == "(1)u^0 + (2)u^2 + O(u^3)");
    std::ostringstream zero;
    zero << USeries(2);
    CHECK(zero.str() == "0 + O(u^2)");
}

TEST_CASE("first_mismatch")
{
    CHECK_FALSE(first_mismatch(poly(4, {1, 2}), poly(6, {1, 2})).has_value());
    CHECK(first_mismatch(poly(4, {1, 2, 3}), poly(4, {1, 2, 4})) == 2u);
}
