#include "appell/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "appell/errors.hpp"

namespace appell::modular {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

long long floor_mod(long long x, long long m)
{
    const long long r = x % m;
    return r < 0 ? r + m : r;
}

// Fourth roots of unity are carried as exponents k of i^k so that zeta^2
// and chi come out exact.
cplx root_of_unity4(long long k)
{
    switch (floor_mod(k, 4)) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

long long zeta_sq_phase(const GammaElement& g)
{
    if (floor_mod(g.d(), 2) == 1) {
        return 2 * ((g.d() - 1) / 2);
    }
    return -g.c(); // exp(-pi i c / 2) = i^{-c}
}

long long chi_phase(const GammaElement& g)
{
    // ab + cd is even on Gamma_{1,2}, so exp(pi i (ab+cd)/4) = i^{(ab+cd)/2}.
    const long long half = (g.a() * g.b() + g.c() * g.d()) / 2;
    const long long sign = floor_mod(g.a(), 2) == 0 ? g.a() / 2 : g.c() / 2;
    return 2 * sign + half;
}

} // namespace

bool in_gamma12(long long a, long long b, long long c, long long d) noexcept
{
    return a * d - b * c == 1 && floor_mod(a * c, 2) == 0 && floor_mod(b * d, 2) == 0;
}

GammaElement::GammaElement(long long a, long long b, long long c, long long d) : a_(a), b_(b), c_(c), d_(d)
{
    if (a * d - b * c != 1) {
        throw DomainError("not in Gamma_{1,2}: determinant is " + std::to_string(a * d - b * c) + ", expected 1");
    }
    if (floor_mod(a * c, 2) != 0 || floor_mod(b * d, 2) != 0) {
        throw DomainError("not in Gamma_{1,2}: requires ac = bd = 0 mod 2");
    }
}

GammaElement operator*(const GammaElement& l, const GammaElement& r)
{
    return {l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_, l.c_ * r.a_ + l.d_ * r.c_,
            l.c_ * r.b_ + l.d_ * r.d_};
}

void require_upper_half_plane(cplx tau)
{
    if (!(tau.imag() > 0.0)) {
        throw DomainError("tau must lie in the upper half plane");
    }
}

cplx automorphy_factor(const GammaElement& g, cplx tau)
{
    return static_cast<double>(g.c()) * tau + static_cast<double>(g.d());
}

cplx mobius(const GammaElement& g, cplx tau)
{
    return (static_cast<double>(g.a()) * tau + static_cast<double>(g.b())) / automorphy_factor(g, tau);
}

AdditivePoint act(const GammaElement& g, const AdditivePoint& p)
{
    require_upper_half_plane(p.tau);
    const cplx j = automorphy_factor(g, p.tau);
    return {p.x / j, mobius(g, p.tau)};
}

cplx zeta_sq(const GammaElement& g)
{
    return root_of_unity4(zeta_sq_phase(g));
}

cplx chi(const GammaElement& g)
{
    return root_of_unity4(chi_phase(g));
}

cplx k_gamma(const GammaElement& g, cplx tau)
{
    require_upper_half_plane(tau);
    const cplx gt = mobius(g, tau);
    return std::exp(0.75 * pi * I * (tau - gt)) * root_of_unity4(-zeta_sq_phase(g) - chi_phase(g)) *
           automorphy_factor(g, tau);
}

num::Nome nome_of(cplx tau, double max_abs_u)
{
    require_upper_half_plane(tau);
    const cplx u = std::exp(pi * I * tau);
    if (std::abs(u) >= max_abs_u) {
        throw DomainError("Im tau too small: |exp(pi i tau)| = " + std::to_string(std::abs(u)));
    }
    return num::Nome{u};
}

cplx tau_of(const num::Nome& u)
{
    return -I * std::log(u.u()) / pi;
}

cplx theta_additive(cplx x, cplx tau, const TruncationPolicy& pol)
{
    return num::theta(std::exp(2.0 * pi * I * x), nome_of(tau), pol);
}

cplx kappa_half(cplx x, cplx tau, const TruncationPolicy& pol)
{
    const num::Nome u = nome_of(tau);
    return num::kappa(-u.u(), std::exp(2.0 * pi * I * x), u, pol);
}

cplx kappa0(cplx x, cplx tau, const TruncationPolicy& pol)
{
    return std::exp(0.75 * pi * I * tau) * kappa_half(x, tau, pol);
}

cplx theta_zero(cplx tau, ThetaZeroIndex index)
{
    return (tau + 1.0) / 2.0 + static_cast<double>(index.m) + static_cast<double>(index.n) * tau;
}

std::vector<ThetaZeroIndex> zero_grid(int radius)
{
    std::vector<ThetaZeroIndex> grid;
    for (int m = -radius; m <= radius; ++m) {
        for (int n = -radius; n <= radius; ++n) {
            grid.push_back({m, n});
        }
    }
    return grid;
}

namespace {

struct DefectTerms {
    cplx lhs;
    cplx rhs;
};

DefectTerms defect_terms(const GammaElement& g, cplx x, cplx tau, const TruncationPolicy& pol)
{
    const cplx j = automorphy_factor(g, tau);
    const cplx gt = mobius(g, tau);
    const cplx lhs = kappa0(x / j, gt, pol);
    const cplx factor = root_of_unity4(-zeta_sq_phase(g) - chi_phase(g)) * j * std::exp(pi * I * (1.0 / j - 1.0) * x);
    return {lhs, factor * kappa0(x, tau, pol)};
}

void require_guarded(const GammaElement& g, cplx tau)
{
    require_upper_half_plane(tau);
    if (tau.imag() < min_im_tau) {
        throw DomainError("Im tau below " + std::to_string(min_im_tau) + "; choose tau further from the real axis");
    }
    const cplx gt = mobius(g, tau);
    if (gt.imag() < min_im_tau) {
        throw DomainError("Im(gamma tau) = " + std::to_string(gt.imag()) + " is below " +
                          std::to_string(min_im_tau) + "; choose a different tau");
    }
}

} // namespace

cplx modular_defect(const GammaElement& g, cplx x, cplx tau, const TruncationPolicy& pol)
{
    const auto t = defect_terms(g, x, tau, pol);
    return t.lhs - t.rhs;
}

std::vector<DivisibilityRecord> divisibility_records(const GammaElement& g, cplx tau,
                                                     std::span<const ThetaZeroIndex> zeros,
                                                     const TruncationPolicy& pol)
{
    require_guarded(g, tau);
    std::vector<DivisibilityRecord> records;
    records.reserve(zeros.size());
    for (const auto& zero : zeros) {
        const cplx x = theta_zero(tau, zero);
        const auto t = defect_terms(g, x, tau, pol);
        const cplx d = t.lhs - t.rhs;
        const double scale = std::max({std::abs(t.lhs), std::abs(t.rhs), 1.0});
        records.push_back({zero, x, d, std::abs(d) / scale});
    }
    return records;
}

double divisibility_residual(const GammaElement& g, cplx tau, std::span<const ThetaZeroIndex> zeros,
                             const TruncationPolicy& pol)
{
    double worst = 0.0;
    for (const auto& r : divisibility_records(g, tau, zeros, pol)) {
        worst = std::max(worst, r.residual);
    }
    return worst;
}

cplx phi_gamma(const GammaElement& g, cplx x, cplx tau, const TruncationPolicy& pol)
{
    const num::Nome u = nome_of(tau);
    const cplx z = std::exp(2.0 * pi * I * x);
    const cplx th = num::theta(z, u, pol);
    const double th_scale = std::real(num::theta(std::abs(z), num::Nome{std::abs(u.u())}, pol));
    if (std::abs(th) <= 1e-6 * th_scale) {
        throw DomainError("phi_gamma: x is too close to a zero of theta(., tau)");
    }
    const cplx gt = mobius(g, tau);
    // D = exp(3 pi i gamma tau / 4) * phi * theta.
    return modular_defect(g, x, tau, pol) * std::exp(-0.75 * pi * I * gt) / th;
}

double div_relation_residual(const GammaElement& g, cplx x, cplx tau, cplx phi, const TruncationPolicy& pol)
{
    const cplx j = automorphy_factor(g, tau);
    const cplx gt = mobius(g, tau);
    const cplx lhs = kappa_half(x / j, gt, pol);
    const cplx rhs = k_gamma(g, tau) * std::exp(pi * I * (1.0 / j - 1.0) * x) * kappa_half(x, tau, pol) +
                     phi * theta_additive(x, tau, pol);
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
}

QuasiResult quasi_periodicity(cplx tau, int radius, const TruncationPolicy& pol)
{
    const cplx x0 = theta_zero(tau, {0, 0});
    const cplx base = kappa_half(x0, tau, pol);
    QuasiResult worst;
    for (const auto& idx : zero_grid(radius)) {
        const cplx lhs = kappa_half(x0 + static_cast<double>(idx.m) + static_cast<double>(idx.n) * tau, tau, pol);
        const cplx rhs = std::exp(pi * I * static_cast<double>(idx.n) * (tau + 1.0)) * base;
        const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (rel >= worst.rel_residual) {
            worst = {rel, lhs, rhs};
        }
    }
    return worst;
}

std::span<const GammaElement> generators()
{
    static const std::array<GammaElement, 2> gens{GammaElement{1, 2, 0, 1}, GammaElement{1, 0, 2, 1}};
    return gens;
}

std::span<const GammaElement> theta_group_generators()
{
    static const std::array<GammaElement, 4> gens{GammaElement{1, 2, 0, 1}, GammaElement{0, -1, 1, 0},
                                                  GammaElement{1, 0, 2, 1}, GammaElement{-1, 0, 0, -1}};
    return gens;
}

std::vector<GammaElement> random_words(int count, int max_length, std::uint64_t seed, std::span<const cplx> taus)
{
    std::vector<GammaElement> letters;
    for (const auto& g : generators()) {
        letters.push_back(g);
        letters.push_back(g.inverse());
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> length_dist(1, std::max(1, max_length));
    std::uniform_int_distribution<std::size_t> letter_dist(0, letters.size() - 1);

    std::vector<GammaElement> words;
    // Bounded so an unsatisfiable tau filter cannot loop forever.
    for (int attempt = 0; static_cast<int>(words.size()) < count && attempt < 1000 * std::max(count, 1); ++attempt) {
        GammaElement w = GammaElement::identity();
        const int len = length_dist(rng);
        for (int i = 0; i < len; ++i) {
            w = w * letters[letter_dist(rng)];
        }
        const bool ok = std::all_of(taus.begin(), taus.end(),
                                    [&](cplx tau) { return mobius(w, tau).imag() >= min_im_tau; });
        if (ok) {
            words.push_back(w);
        }
    }
    return words;
}

} // namespace appell::modular
