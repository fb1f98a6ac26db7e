#include "appell/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "appell/bundle.hpp"
#include "appell/modular.hpp"
#include "appell/qexact.hpp"

namespace appell::suites {

namespace {

using num::cplx;
using num::IdentityId;
using num::Nome;

double rel(cplx l, cplx r)
{
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

CheckRecord residual_record(std::string id, Suite suite, int samples, double worst, double tol,
                            std::string detail = {})
{
    CheckRecord r;
    r.id = std::move(id);
    r.suite = suite;
    r.samples = samples;
    r.max_rel_residual = worst;
    r.tolerance = tol;
    r.pass = std::isfinite(worst) && worst < tol;
    r.detail = std::move(detail);
    return r;
}

CheckRecord exact_record(std::string id, int samples, const qexact::ExactVerdict& v, std::string detail = {})
{
    CheckRecord r;
    r.id = std::move(id);
    r.suite = Suite::exact;
    r.samples = samples;
    r.pass = v.pass;
    r.failing_exponent = v.first_failing_exponent;
    r.detail = std::move(detail);
    return r;
}

CheckRecord error_record(std::string id, Suite suite, double tol, const std::exception& e)
{
    CheckRecord r;
    r.id = std::move(id);
    r.suite = suite;
    r.tolerance = tol;
    r.pass = false;
    r.detail = e.what();
    return r;
}

// Runs body and turns any exception into a failing record.
CheckRecord guarded(const std::string& id, Suite suite, double tol, const std::function<CheckRecord()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return error_record(id, suite, tol, e);
    }
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t salt)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    std::array<std::uint32_t, 2> out{};
    seq.generate(out.begin(), out.end());
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    cplx polar(double r) { return std::polar(r, uniform(0.0, 2.0 * std::numbers::pi)); }

    cplx log_uniform(double lo, double hi) { return polar(std::exp(uniform(std::log(lo), std::log(hi)))); }

    Nome nome(double lo, double hi) { return Nome{polar(uniform(lo, hi))}; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

constexpr double guard = 1e-3;
constexpr double bundle_u_min = 0.05;
constexpr double bundle_u_max = 0.6;

// a with a, 1/a away from q^Z; the theta factors of c_a vanish on the same set.
cplx draw_a(Draw& d, const Nome& u)
{
    for (;;) {
        const cplx a = d.log_uniform(0.5, 2.0);
        if (num::lattice_distance(a, 1.0, u.q()) >= guard && num::lattice_distance(1.0 / a, 1.0, u.q()) >= guard) {
            return a;
        }
    }
}

cplx draw_z(Draw& d, const bundle::DistanceFn& dist)
{
    for (;;) {
        const cplx z = d.log_uniform(0.5, 2.0);
        if (dist(z) >= guard) {
            return z;
        }
    }
}

// ---- numeric ----------------------------------------------------------------

// First-order expansions at tiny u, measured as |f - expansion| / |u|:
//   theta(z)    = 1 + u (z + 1/z) + O(u^4)
//   kappa(a, z) = 1/(1-a) - u z / a + O(u^3)
const double limit_nomes[] = {1e-5, 1e-6};

CheckRecord limit_theta()
{
    double worst = 0.0;
    int n = 0;
    for (double r : limit_nomes) {
        for (cplx z : {cplx{1.0, 0.0}, cplx{0.7, 0.4}, cplx{-1.3, 0.2}}) {
            const cplx t = num::theta(z, Nome{cplx{r, 0.0}});
            worst = std::max(worst, std::abs(t - 1.0 - r * (z + 1.0 / z)) / r);
            ++n;
        }
    }
    return residual_record("LIMIT_THETA", Suite::numeric, n, worst, numeric_tolerance,
                           "|theta - 1 - u(z + 1/z)| / u at u <= 1e-5");
}

CheckRecord limit_kappa()
{
    double worst = 0.0;
    int n = 0;
    const cplx z{0.9, 0.2};
    for (double r : limit_nomes) {
        for (cplx a : {cplx{0.5, 0.0}, cplx{-0.8, 0.3}, cplx{1.7, -0.6}}) {
            const cplx k = num::kappa(a, z, Nome{cplx{r, 0.0}});
            worst = std::max(worst, std::abs(k - 1.0 / (1.0 - a) + r * z / a) / r);
            ++n;
        }
    }
    return residual_record("LIMIT_KAPPA", Suite::numeric, n, worst, numeric_tolerance,
                           "|kappa - 1/(1-a) + u z/a| / u at u <= 1e-5");
}

CheckRecord pole_guard_check()
{
    int raised = 0;
    int n_cases = 0;
    std::string missed;
    for (cplx uu : {cplx{0.3, 0.0}, cplx{0.2, 0.35}}) {
        const Nome u{uu};
        for (int n = -3; n <= 3; ++n) {
            const cplx a = std::pow(uu, 2 * n) * (1.0 + 1e-14);
            ++n_cases;
            try {
                (void)num::kappa(a, cplx{0.8, 0.1}, u);
                missed += (missed.empty() ? "" : " ") + std::to_string(n);
            } catch (const PoleProximityError&) {
                ++raised;
            }
        }
    }
    CheckRecord r;
    r.id = "POLE_GUARD";
    r.suite = Suite::numeric;
    r.samples = n_cases;
    r.pass = raised == n_cases;
    r.detail = r.pass ? "PoleProximityError raised for a = u^{2n}(1+1e-14), |n| <= 3"
                      : "no error for n = " + missed;
    return r;
}

// ---- bundles ------------------------------------------------------------------

CheckRecord section_check(const Options& opt, bool keystone)
{
    Draw d(derive(opt.seed, keystone ? 11 : 10));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx z = d.log_uniform(0.5, 2.0);
        const cplx pt[] = {z};
        if (keystone) {
            const cplx a = draw_a(d, u);
            bundle::SectionCandidate v{2, [a, u](cplx w) {
                                           Eigen::VectorXcd x(2);
                                           x << num::kappa(a, w, u), num::theta(w, u);
                                           return x;
                                       }};
            worst = std::max(worst, bundle::check_section(bundle::make_Fa(a, u), v, pt));
        } else {
            bundle::SectionCandidate v{1, [u](cplx w) {
                                           Eigen::VectorXcd x(1);
                                           x << num::theta(w, u);
                                           return x;
                                       }};
            worst = std::max(worst, bundle::check_section(bundle::make_L(u), v, pt));
        }
    }
    return residual_record(keystone ? "SECTION_FA" : "SECTION_L", Suite::bundles, opt.samples, worst, 1e-10);
}

CheckRecord tensor_check(const Options& opt)
{
    Draw d(derive(opt.seed, 12));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx a = d.log_uniform(0.5, 2.0);
        const cplx z = d.log_uniform(0.5, 2.0);
        const auto L = bundle::make_L(u);
        const auto F = bundle::make_Fa(a, u);
        const Eigen::MatrixXcd expect = L(z)(0, 0) * F(z);
        worst = std::max(worst, (bundle::tensor(L, F)(z) - expect).cwiseAbs().maxCoeff());
    }
    CheckRecord r = residual_record("TENSOR", Suite::bundles, opt.samples, worst, 0.0);
    r.pass = worst == 0.0;
    return r;
}

CheckRecord conj1(const Options& opt)
{
    Draw d(derive(opt.seed, 13));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx a = draw_a(d, u);
        const cplx z = draw_z(d, [&u](cplx w) { return bundle::singular_distance(w, u); });
        const cplx pt[] = {z};
        worst = std::max(worst, bundle::gauge_residual(bundle::build_B(a, u), bundle::make_Fpa(a, u),
                                                       bundle::make_Fa(a, u), pt));
    }
    return residual_record("CONJ1", Suite::bundles, opt.samples, worst, numeric_tolerance);
}

CheckRecord conj2(const Options& opt)
{
    Draw d(derive(opt.seed, 14));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx z = draw_z(d, [&u](cplx w) { return bundle::singular_distance(w, u); });
        const cplx pt[] = {z};
        worst = std::max(worst, bundle::gauge_residual(bundle::build_C(u), bundle::make_push(u),
                                                       bundle::make_Fpa(1.0, u), pt));
    }
    return residual_record("CONJ2", Suite::bundles, opt.samples, worst, numeric_tolerance);
}

constexpr int det_points = 20;
constexpr int det_draws = 10;

std::vector<CheckRecord> determinant_checks(const Options& opt)
{
    Draw d(derive(opt.seed, 15));
    double spread_b = 0.0, spread_c = 0.0, value_b = 0.0, value_c = 0.0;
    for (int i = 0; i < det_draws; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx a = draw_a(d, u);
        const auto pts = bundle::sample_z([&u](cplx w) { return bundle::singular_distance(w, u); }, det_points,
                                          derive(opt.seed, 100 + static_cast<std::uint64_t>(i)));
        const auto B = bundle::build_B(a, u);
        const auto C = bundle::build_C(u);
        spread_b = std::max(spread_b, bundle::det_spread(B, pts));
        spread_c = std::max(spread_c, bundle::det_spread(C, pts));
        value_b = std::max(value_b, rel(B(pts.front()).determinant(), -bundle::c_a(a, u)));
        value_c = std::max(value_c, rel(C(pts.front()).determinant(), -bundle::c_C(u)));
    }
    const int n = det_draws * det_points;
    return {residual_record("DET_B", Suite::bundles, n, spread_b, numeric_tolerance, "relative spread of det B"),
            residual_record("DET_B_VALUE", Suite::bundles, det_draws, value_b, numeric_tolerance, "det B = -c_a"),
            residual_record("DET_C", Suite::bundles, n, spread_c, numeric_tolerance, "relative spread of det C"),
            residual_record("DET_C_VALUE", Suite::bundles, det_draws, value_c, numeric_tolerance, "det C = -c")};
}

CheckRecord c_a_cross(const Options& opt)
{
    Draw d(derive(opt.seed, 16));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx a = draw_a(d, u);
        const cplx w = -u.u();
        const cplx via_kappa = num::kappa(a, w, u) * num::kappa(1.0 / a, w, u) / a;
        worst = std::max(worst, rel(bundle::c_a(a, u), via_kappa));
    }
    return residual_record("C_A_CROSS", Suite::bundles, opt.samples, worst, numeric_tolerance,
                           "c_a = a^{-1} kappa_a(-u) kappa_{1/a}(-u)");
}

CheckRecord c_cross(const Options& opt)
{
    Draw d(derive(opt.seed, 17));
    double worst = 0.0;
    for (int i = 0; i < opt.samples; ++i) {
        const Nome u = d.nome(bundle_u_min, bundle_u_max);
        const cplx via_kappa = -bundle::lambda_C(u) * num::kappa(-1.0, -1.0 / u.u(), u);
        worst = std::max(worst, rel(bundle::c_C(u) / 2.0, via_kappa));
    }
    return residual_record("C_CROSS", Suite::bundles, opt.samples, worst, numeric_tolerance,
                           "c/2 = -lambda kappa_{-1}(-u^{-1})");
}

CheckRecord bezout(const Options& opt)
{
    double worst = 0.0;
    int n = 0;
    std::uint64_t salt = 18;
    for (cplx uu : {cplx{0.2, 0.0}, cplx{0.4, 0.1}}) {
        const Nome u{uu};
        const auto pts = bundle::sample_z([&u](cplx w) { return bundle::bezout_singular_distance(w, u); },
                                          opt.samples, derive(opt.seed, salt++));
        worst = std::max(worst, bundle::bezout_residual(bundle::bezout_pair(u), u, pts));
        n += static_cast<int>(pts.size());
    }
    return residual_record("BEZOUT", Suite::bundles, n, worst, numeric_tolerance,
                           "|phi1 theta(z,q^2) - phi2 theta(qz,q^2) - 1| at u = 0.2, 0.4+0.1i");
}

CheckRecord bezout_circles()
{
    double worst = 0.0;
    int n = 0;
    for (cplx uu : {cplx{0.05, 0.0}, cplx{0.2, 0.0}, cplx{0.4, 0.1}}) {
        const Nome u{uu};
        for (double radius : {0.3, 1.0, 3.0}) {
            const auto pts =
                bundle::circle_points([&u](cplx w) { return bundle::bezout_singular_distance(w, u); }, radius, 16);
            worst = std::max(worst, bundle::bezout_residual(bundle::bezout_pair(u), u, pts));
            n += static_cast<int>(pts.size());
        }
    }
    return residual_record("BEZOUT_CIRCLES", Suite::bundles, n, worst, numeric_tolerance,
                           "|z| in {0.3, 1, 3}, u in {0.05, 0.2, 0.4+0.1i}");
}

CheckRecord mu_expansion(const Options& opt)
{
    Draw d(derive(opt.seed, 20));
    const int count = std::max(1, opt.samples / 2);
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        for (;;) {
            const Nome u = d.nome(bundle_u_min, bundle_u_max);
            const cplx a = d.log_uniform(0.5, 2.0);
            const cplx b = d.log_uniform(0.5, 2.0);
            if (bundle::mu_guard_distance(a, b, u) < guard ||
                num::lattice_distance(-a * b, 1.0, u.q()) < guard) {
                continue;
            }
            const cplx pt[] = {d.log_uniform(0.5, 2.0)};
            worst = std::max(worst, bundle::mu_expansion_residual(a, b, u, pt).worst.rel_residual);
            break;
        }
    }
    return residual_record("MU_EXPANSION", Suite::bundles, count, worst, numeric_tolerance);
}

// ---- modular ------------------------------------------------------------------

const cplx divisibility_taus[] = {cplx{0.0, 1.2}, cplx{0.0, 2.0}, cplx{0.5, 1.5}};

CheckRecord divisibility(const Options& opt)
{
    std::vector<modular::GammaElement> words(modular::generators().begin(), modular::generators().end());
    const auto extra = modular::random_words(10, 3, derive(opt.seed, 30), divisibility_taus);
    words.insert(words.end(), extra.begin(), extra.end());
    const auto grid = modular::zero_grid(1);
    double worst = 0.0;
    for (const auto& g : words) {
        for (cplx tau : divisibility_taus) {
            worst = std::max(worst, modular::divisibility_residual(g, tau, grid));
        }
    }
    const int n = static_cast<int>(words.size() * std::size(divisibility_taus) * grid.size());
    return residual_record("DIVISIBILITY", Suite::modular, n, worst, modular_tolerance,
                           std::to_string(words.size()) + " elements x 3 tau x 9 zeros");
}

// Products of length 1..3 over the full theta-group generating set.
modular::GammaElement random_theta_word(std::mt19937_64& rng)
{
    const auto gens = modular::theta_group_generators();
    std::uniform_int_distribution<int> len(1, 3);
    std::uniform_int_distribution<std::size_t> pick(0, 2 * gens.size() - 1);
    modular::GammaElement w = modular::GammaElement::identity();
    for (int i = len(rng); i > 0; --i) {
        const std::size_t k = pick(rng);
        w = w * (k < gens.size() ? gens[k] : gens[k - gens.size()].inverse());
    }
    return w;
}

CheckRecord chi_multiplicativity(const Options& opt)
{
    std::mt19937_64 rng(derive(opt.seed, 31));
    constexpr int pairs = 50;
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        const auto g = random_theta_word(rng);
        const auto h = random_theta_word(rng);
        worst = std::max(worst, std::abs(modular::chi(g * h) - modular::chi(g) * modular::chi(h)));
    }
    return residual_record("CHI_MULT", Suite::modular, pairs, worst, 1e-12, "chi(gh) = chi(g) chi(h)");
}

CheckRecord k_identity()
{
    bool exact = true;
    const cplx taus[] = {cplx{0.0, 1.2}, cplx{0.0, 2.0}, cplx{0.5, 1.5}, cplx{-0.3, 0.4}};
    for (cplx tau : taus) {
        exact = exact && modular::k_gamma(modular::GammaElement::identity(), tau) == cplx{1.0, 0.0};
    }
    CheckRecord r;
    r.id = "K_IDENTITY";
    r.suite = Suite::modular;
    r.samples = static_cast<int>(std::size(taus));
    r.pass = exact;
    r.detail = "k_gamma(I, tau) == 1 exactly";
    return r;
}

CheckRecord ctheta_cocycle(const Options& opt)
{
    std::mt19937_64 rng(derive(opt.seed, 32));
    std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.3, 2.0);
    const int count = opt.samples / 2 > 0 ? opt.samples / 2 : 1;
    double worst = 0.0;
    for (int i = 0; i < count;) {
        const auto g = random_theta_word(rng);
        const cplx tau{re(rng), im(rng)};
        const cplx gt = modular::mobius(g, tau);
        if (gt.imag() < modular::min_im_tau) {
            continue;
        }
        const cplx t0 = modular::theta_additive(0.0, tau);
        const cplx t1 = modular::theta_additive(0.0, gt);
        const cplx lhs = modular::zeta_sq(g) * modular::automorphy_factor(g, tau);
        worst = std::max(worst, rel(lhs, t1 * t1 / (t0 * t0)));
        ++i;
    }
    return residual_record("CTHETA_COCYCLE", Suite::modular, count, worst, modular_tolerance,
                           "zeta^2 (c tau + d) = theta(0, gamma tau)^2 / theta(0, tau)^2");
}

CheckRecord kappa_half_sp2()
{
    double worst = 0.0;
    const cplx taus[] = {cplx{0.0, 1.2}, cplx{0.0, 2.0}, cplx{0.5, 1.5}, cplx{0.2, 0.6}};
    for (cplx tau : taus) {
        const Nome u = modular::nome_of(tau);
        const cplx lhs = modular::kappa_half((tau + 1.0) / 2.0, tau);
        const cplx rhs = 0.5 * num::theta(-1.0, u) * num::theta(u.u(), u);
        worst = std::max(worst, rel(lhs, rhs));
    }
    return residual_record("KAPPA_HALF_SP2", Suite::modular, static_cast<int>(std::size(taus)), worst,
                           numeric_tolerance, "kappa((tau+1)/2, (tau+1)/2, tau) = theta(-1) theta(u) / 2");
}

// ---- exact ------------------------------------------------------------------

std::vector<CheckRecord> triangular_checks(const Options& opt)
{
    // q^0 .. q^{Q-1} with Q = exact_order/2 + 1, so the default covers q^40.
    const std::size_t q_order = opt.exact_order / 2 + 1;
    const std::size_t trunc = 2 * q_order - 1;
    const auto tri = qexact::triangular_gf(trunc);
    const auto t3 = tri * tri * tri;
    const auto ds = qexact::double_sum_series(trunc);
    const auto an = qexact::andrews_series(trunc);
    const auto brute = qexact::triangular_counts_bruteforce(q_order);

    std::vector<qexact::Rational> brute_u(trunc);
    for (std::size_t m = 0; m < q_order; ++m) {
        brute_u[2 * m] = brute.counts[m];
    }
    const qexact::USeries brute_series(trunc, std::move(brute_u));

    qexact::ExactVerdict positive{true, std::nullopt};
    for (std::size_t m = 0; m < q_order; ++m) {
        if (an[2 * m] < 1) {
            positive = {false, 2 * m};
            break;
        }
    }
    const int n = static_cast<int>(q_order);
    const std::string range = "q^0..q^" + std::to_string(q_order - 1);
    return {exact_record("ANDREWS_POSITIVE", n, positive, "every Andrews coefficient >= 1, " + range),
            exact_record("T3_ANDREWS", n, qexact::compare({t3, an}), range),
            exact_record("T3_BRUTE_FORCE", n, qexact::compare({t3, brute_series}), range),
            exact_record("T3_DOUBLE_SUM", n, qexact::compare({t3, ds}), range)};
}

bool is_identity_name(std::string_view name)
{
    return num::find_identity(name).has_value();
}

void sort_records(std::vector<CheckRecord>& records)
{
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& l, const CheckRecord& r) { return l.id < r.id; });
}

} // namespace

std::string_view to_string(Suite s) noexcept
{
    switch (s) {
    case Suite::numeric:
        return "numeric";
    case Suite::exact:
        return "exact";
    case Suite::bundles:
        return "bundles";
    case Suite::modular:
        return "modular";
    }
    return "?";
}

CheckRecord run_identity(IdentityId id, const Options& opt)
{
    const std::string name{num::to_string(id)};
    return guarded(name, Suite::numeric, numeric_tolerance, [&] {
        double worst = 0.0;
        for (const auto& s : num::sample_points(id, num::SampleDomain{}, opt.samples, opt.seed)) {
            const auto rep = num::identity_residual(id, s.point, s.nome);
            if (!(rep.rel_residual <= worst)) {
                worst = rep.rel_residual;
            }
        }
        return residual_record(name, Suite::numeric, opt.samples, worst, numeric_tolerance);
    });
}

CheckRecord run_for_exact(IdentityId id, const Options& opt)
{
    if (id != IdentityId::FOR1 && id != IdentityId::FOR2) {
        throw std::invalid_argument("run_for_exact: only FOR1 and FOR2 have exact forms");
    }
    const std::string name = std::string(num::to_string(id)) + "_EXACT";
    return guarded(name, Suite::exact, 0.0, [&] {
        const auto v = id == IdentityId::FOR1 ? qexact::check_for1_exact(opt.exact_order)
                                              : qexact::check_for2_exact(opt.exact_order);
        return exact_record(name, static_cast<int>(opt.exact_order), v,
                            "u^0..u^" + std::to_string(opt.exact_order - 1));
    });
}

std::vector<CheckRecord> run_numeric(const Options& opt)
{
    std::vector<CheckRecord> out;
    for (IdentityId id : num::all_identities()) {
        out.push_back(run_identity(id, opt));
    }
    out.push_back(guarded("LIMIT_THETA", Suite::numeric, 0.0, limit_theta));
    out.push_back(guarded("LIMIT_KAPPA", Suite::numeric, 0.0, limit_kappa));
    out.push_back(guarded("POLE_GUARD", Suite::numeric, 0.0, pole_guard_check));
    return out;
}

std::vector<CheckRecord> run_exact(const Options& opt)
{
    std::vector<CheckRecord> out{run_for_exact(IdentityId::FOR1, opt), run_for_exact(IdentityId::FOR2, opt)};
    try {
        for (auto& r : triangular_checks(opt)) {
            out.push_back(std::move(r));
        }
    } catch (const std::exception& e) {
        out.push_back(error_record("T3_DOUBLE_SUM", Suite::exact, 0.0, e));
    }
    return out;
}

std::vector<CheckRecord> run_bundles(const Options& opt)
{
    const double tol = numeric_tolerance;
    std::vector<CheckRecord> out{
        guarded("SECTION_L", Suite::bundles, 1e-10, [&] { return section_check(opt, false); }),
        guarded("SECTION_FA", Suite::bundles, 1e-10, [&] { return section_check(opt, true); }),
        guarded("TENSOR", Suite::bundles, 0.0, [&] { return tensor_check(opt); }),
        guarded("CONJ1", Suite::bundles, tol, [&] { return conj1(opt); }),
        guarded("CONJ2", Suite::bundles, tol, [&] { return conj2(opt); }),
        guarded("C_A_CROSS", Suite::bundles, tol, [&] { return c_a_cross(opt); }),
        guarded("C_CROSS", Suite::bundles, tol, [&] { return c_cross(opt); }),
        guarded("BEZOUT", Suite::bundles, tol, [&] { return bezout(opt); }),
        guarded("BEZOUT_CIRCLES", Suite::bundles, tol, bezout_circles),
        guarded("MU_EXPANSION", Suite::bundles, tol, [&] { return mu_expansion(opt); }),
    };
    try {
        for (auto& r : determinant_checks(opt)) {
            out.push_back(std::move(r));
        }
    } catch (const std::exception& e) {
        out.push_back(error_record("DET_B", Suite::bundles, tol, e));
    }
    return out;
}

std::vector<CheckRecord> run_modular(const Options& opt)
{
    return {
        guarded("DIVISIBILITY", Suite::modular, modular_tolerance, [&] { return divisibility(opt); }),
        guarded("CHI_MULT", Suite::modular, 1e-12, [&] { return chi_multiplicativity(opt); }),
        guarded("K_IDENTITY", Suite::modular, 0.0, k_identity),
        guarded("CTHETA_COCYCLE", Suite::modular, modular_tolerance, [&] { return ctheta_cocycle(opt); }),
        guarded("KAPPA_HALF_SP2", Suite::modular, numeric_tolerance, kappa_half_sp2),
    };
}

std::vector<std::string> check_ids(Suite s)
{
    switch (s) {
    case Suite::numeric:
        return {"LIMIT_THETA", "LIMIT_KAPPA", "POLE_GUARD"};
    case Suite::exact:
        return {"FOR1_EXACT", "FOR2_EXACT", "ANDREWS_POSITIVE", "T3_ANDREWS", "T3_BRUTE_FORCE", "T3_DOUBLE_SUM"};
    case Suite::bundles:
        return {"SECTION_L", "SECTION_FA", "TENSOR",      "CONJ1",       "CONJ2", "C_A_CROSS", "C_CROSS",
                "BEZOUT",    "BEZOUT_CIRCLES", "MU_EXPANSION", "DET_B", "DET_B_VALUE", "DET_C", "DET_C_VALUE"};
    case Suite::modular:
        return {"DIVISIBILITY", "CHI_MULT", "K_IDENTITY", "CTHETA_COCYCLE", "KAPPA_HALF_SP2"};
    }
    return {};
}

std::vector<CheckRecord> run_named(std::string_view name, const Options& opt)
{
    std::vector<CheckRecord> out;
    const auto append = [&out](std::vector<CheckRecord> more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    if (name == "all") {
        append(run_numeric(opt));
        append(run_exact(opt));
        append(run_bundles(opt));
        append(run_modular(opt));
    } else if (name == "numeric") {
        append(run_numeric(opt));
    } else if (name == "exact") {
        append(run_exact(opt));
    } else if (name == "bundles") {
        append(run_bundles(opt));
    } else if (name == "modular") {
        append(run_modular(opt));
    } else if (is_identity_name(name)) {
        const IdentityId id = num::parse_identity(name);
        out.push_back(run_identity(id, opt));
        if (id == IdentityId::FOR1 || id == IdentityId::FOR2) {
            out.push_back(run_for_exact(id, opt));
        }
    } else {
        for (Suite s : {Suite::numeric, Suite::exact, Suite::bundles, Suite::modular}) {
            const auto ids = check_ids(s);
            if (std::find(ids.begin(), ids.end(), name) == ids.end()) {
                continue;
            }
            auto records = s == Suite::numeric ? run_numeric(opt)
                           : s == Suite::exact ? run_exact(opt)
                           : s == Suite::bundles ? run_bundles(opt)
                                                 : run_modular(opt);
            for (auto& r : records) {
                if (r.id == name) {
                    out.push_back(std::move(r));
                }
            }
            break;
        }
        if (out.empty()) {
            throw std::invalid_argument("unknown suite or check: " + std::string(name));
        }
    }
    sort_records(out);
    return out;
}

bool all_pass(const std::vector<CheckRecord>& records) noexcept
{
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

} // namespace appell::suites
