#include <doctest.h>

#include <cmath>

#include "appell/bundle.hpp"

using namespace appell;
using namespace appell::bundle;

namespace {

double rel(cplx l, cplx r)
{
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

SectionCandidate theta_section(const Nome& u)
{
    return {1, [u](cplx z) {
                Eigen::VectorXcd v(1);
                v << num::theta(z, u);
                return v;
            }};
}

SectionCandidate canonical_section(cplx a, const Nome& u)
{
    return {2, [a, u](cplx z) {
                Eigen::VectorXcd v(2);
                v << num::kappa(a, z, u), num::theta(z, u);
                return v;
            }};
}

DistanceFn gauge_distance(const Nome& u)
{
    return [u](cplx z) { return singular_distance(z, u); };
}

DistanceFn bezout_distance(const Nome& u)
{
    return [u](cplx z) { return bezout_singular_distance(z, u); };
}

const cplx nomes[] = {cplx{0.3, 0.0}, cplx{0.45, 0.2}, cplx{-0.1, 0.58}, cplx{0.05, 0.0}};

} // namespace

TEST_CASE("factors of automorphy")
{
    const Nome u{cplx{0.4, 0.2}};
    const cplx a{0.7, -0.3};
    const cplx z{1.1, 0.5};
    CHECK(rel(make_Fa(a, u)(z).determinant(), a / (u.u() * z)) < 1e-15);
    CHECK(rel(make_Fpa(a, u)(z).determinant(), a / (u.u() * z)) < 1e-15);
    CHECK(rel(make_push(u)(z).determinant(), 1.0 / (u.u() * z)) < 1e-15);
    CHECK(make_L(u)(z)(0, 0) == 1.0 / (u.u() * z));
    CHECK(make_Pa(a, u)(z)(0, 0) == a);
    CHECK(make_Fa(a, u).rank() == 2);
    CHECK(make_L(u).label() == "L");
}

TEST_CASE("tensor product of factors")
{
    const Nome u{cplx{0.4, 0.2}};
    const cplx a{0.7, -0.3};
    const auto L = make_L(u);
    const auto F = make_Fa(a, u);
    const auto LF = tensor(L, F);
    for (cplx z : {cplx{1.0, 0.0}, cplx{0.3, 0.9}, cplx{-1.7, 0.2}}) {
        const Eigen::MatrixXcd expect = L(z)(0, 0) * F(z);
        CHECK(LF(z) == expect);
    }
    CHECK(LF.rank() == 2);
    CHECK_THROWS_AS(tensor(F, L), std::invalid_argument);
    CHECK_THROWS_AS(tensor(L, make_Fa(a, Nome{cplx{0.3, 0.0}})), std::invalid_argument);
}

TEST_CASE("sections of L and F_a")
{
    for (cplx uu : nomes) {
        const Nome u{uu};
        const auto pts = sample_z([](cplx) { return 1.0; }, 20, 1);
        CHECK(check_section(make_L(u), theta_section(u), pts) < 1e-10);
        const cplx a{0.8, 0.9};
        CHECK(check_section(make_Fa(a, u), canonical_section(a, u), pts) < 1e-10);

        const SectionCandidate zero{2, [](cplx) { return Eigen::VectorXcd::Zero(2).eval(); }};
        CHECK(check_section(make_Fa(a, u), zero, pts) == 0.0);
        CHECK_THROWS_AS(check_section(make_L(u), zero, pts), std::invalid_argument);
    }
}

TEST_CASE("B is a gauge F'_a -> F_a with constant determinant -c_a")
{
    for (cplx uu : nomes) {
        const Nome u{uu};
        const auto pts = sample_z(gauge_distance(u), 20, 3);
        for (cplx a : {cplx{0.7, 0.4}, cplx{-1.3, 0.5}, cplx{1.6, -0.1}}) {
            CAPTURE(a);
            const auto B = build_B(a, u);
            CHECK(B.source() == "F'_a");
            CHECK(B.target() == "F_a");
            CHECK(gauge_residual(B, make_Fpa(a, u), make_Fa(a, u), pts) < 1e-9);
            CHECK(det_spread(B, pts) < 1e-9);
            CHECK(rel(B(pts[0]).determinant(), -c_a(a, u)) < 1e-9);

            const cplx w = -u.u();
            CHECK(rel(c_a(a, u), num::kappa(a, w, u) * num::kappa(1.0 / a, w, u) / a) < 1e-9);
        }
    }
}

TEST_CASE("build_B rejects a on q^Z")
{
    const Nome u{cplx{0.3, 0.0}};
    CHECK_THROWS_AS(build_B(u.q(), u), DomainError);
    CHECK_THROWS_AS(build_B(1.0 / u.q() * (1.0 + 1e-5), u), DomainError);
    CHECK_THROWS_AS(build_B(1.0, u), DomainError);
}

TEST_CASE("C is a gauge pi_*L' -> F'_1 with determinant -c")
{
    for (cplx uu : nomes) {
        const Nome u{uu};
        const auto pts = sample_z(gauge_distance(u), 20, 5);
        const auto C = build_C(u);
        CHECK(gauge_residual(C, make_push(u), make_Fpa(1.0, u), pts) < 1e-9);
        CHECK(det_spread(C, pts) < 1e-9);
        CHECK(rel(C(pts[0]).determinant(), -c_C(u)) < 1e-9);
        CHECK(rel(c_C(u) / 2.0, -lambda_C(u) * num::kappa(-1.0, -1.0 / u.u(), u)) < 1e-9);
    }
}

TEST_CASE("a non-gauge matrix leaves a residual")
{
    const Nome u{cplx{0.3, 0.1}};
    const GaugeMatrix id{[](cplx) { return Eigen::Matrix2cd::Identity().eval(); }, "F'_a", "F_a"};
    const auto pts = sample_z(gauge_distance(u), 5, 2);
    CHECK(gauge_residual(id, make_Fpa(cplx{0.7, 0.0}, u), make_Fa(cplx{0.7, 0.0}, u), pts) > 1e-3);
    CHECK(det_spread(id, pts) == 0.0);
}

TEST_CASE("Bezout pair")
{
    for (cplx uu : {cplx{0.2, 0.0}, cplx{0.4, 0.1}, cplx{0.05, 0.0}}) {
        const Nome u{uu};
        const auto p = bezout_pair(u);
        CHECK(bezout_residual(p, u, sample_z(bezout_distance(u), 100, 11)) < 1e-9);
        for (double r : {0.3, 1.0, 3.0}) {
            CHECK(bezout_residual(p, u, circle_points(bezout_distance(u), r, 24)) < 1e-9);
        }
    }

    // Near the trivial limit theta = 1, phi1 ~ 1 and phi2 ~ 0.
    const Nome small{cplx{0.05, 0.0}};
    const auto p = bezout_pair(small);
    const cplx z{0.7, 0.4};
    CHECK(std::abs(p.phi1(z) - 1.0) < 0.05);
    CHECK(std::abs(p.phi2(z)) < 0.05);
}

TEST_CASE("Bezout pair stays bounded approaching the zeros of theta(z, q^2) and theta(qz, q^2)")
{
    const Nome u{cplx{0.4, 0.1}};
    const auto p = bezout_pair(u);
    for (cplx z0 : {-u.q(), cplx{-1.0, 0.0}, -u.q() * u.q()}) {
        const cplx far = z0 * (1.0 + 1e-2 * cplx{0.6, 0.8});
        const double ref = std::max(std::abs(p.phi1(far)), std::abs(p.phi2(far)));
        for (double t : {1e-4, 1e-6, 1e-8}) {
            const cplx z = z0 * (1.0 + t * cplx{0.6, 0.8});
            CAPTURE(t);
            CHECK(std::abs(p.phi1(z)) < 2.0 * ref + 1.0);
            CHECK(std::abs(p.phi2(z)) < 2.0 * ref + 1.0);
        }
    }
}

TEST_CASE("basis sections of L (x) F_a")
{
    for (cplx uu : nomes) {
        const Nome u{uu};
        const cplx a{0.9, 0.6};
        const auto LF = tensor(make_L(u), make_Fa(a, u));
        const auto basis = basis_sections(a, u);
        const auto pts = sample_z([](cplx) { return 1.0; }, 10, 4);
        CHECK(check_section(LF, basis.v0, pts) < 1e-10);
        CHECK(check_section(LF, basis.v1, pts) < 1e-10);
        CHECK(check_section(LF, basis.vm1, pts) < 1e-10);
        for (cplx z : pts) {
            CHECK(basis.v0.eval(z)(1) == cplx{0.0, 0.0});
        }
        const cplx second = (basis.v1.eval(1.0) - basis.vm1.eval(1.0))(1);
        const cplx t1 = num::theta(1.0, u), tm = num::theta(-1.0, u);
        CHECK(rel(second, t1 * t1 + tm * tm) < 1e-14);
        CHECK(std::abs(second) > 0.1);
    }
    CHECK_THROWS_AS(basis_sections(-0.09, Nome{cplx{0.3, 0.0}}), DomainError);
}

TEST_CASE("mu expansion")
{
    const Nome u{cplx{0.35, 0.15}};
    const cplx a{0.8, 0.3};
    const cplx b{1.2, -0.5};
    REQUIRE(mu_guard_distance(a, b, u) > 1e-3);
    const auto pts = sample_z([](cplx) { return 1.0; }, 50, 6);
    const auto r = mu_expansion_residual(a, b, u, pts);
    CHECK(r.worst.rel_residual < 1e-9);
    CHECK(r.first_row < 1e-9);
    CHECK(r.second_row < 1e-9);
    CHECK(r.worst.identity_id == "MU_EXPANSION");

    CHECK(rel(lambda_b(1.0, u), 1.0) < 1e-15);
    const auto r1 = mu_expansion_residual(a, 1.0, u, pts);
    CHECK(r1.worst.rel_residual < 1e-9);

    // The theta row on its own.
    for (cplx z : pts) {
        const cplx lhs = num::theta(z / b, u) * num::theta(b * z, u);
        const cplx tz = num::theta(z, u), tmz = num::theta(-z, u);
        const cplx rhs = lambda_b(b, u) * tz * tz + lambda_b(-b, u) * tmz * tmz;
        CHECK(rel(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("sampling helpers")
{
    const Nome u{cplx{0.3, 0.0}};
    const auto a = sample_z(gauge_distance(u), 30, 9);
    const auto b = sample_z(gauge_distance(u), 30, 9);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(singular_distance(a[i], u) >= 1e-3);
        CHECK(std::abs(a[i]) >= 0.5 - 1e-12);
        CHECK(std::abs(a[i]) <= 2.0 + 1e-12);
    }
    CHECK(singular_distance(u.u(), u) < 1e-15);
    CHECK(singular_distance(-u.u() * u.q(), u) < 1e-15);
    CHECK(bezout_singular_distance(-u.q(), u) < 1e-15);
    // Real nome: the circle through 0.3 avoids the singular point by the phase offset.
    const auto circ = circle_points(gauge_distance(u), 0.3, 16);
    CHECK(circ.size() == 16);
    for (cplx z : circ) {
        CHECK(std::abs(std::abs(z) - 0.3) < 1e-15);
    }
}
