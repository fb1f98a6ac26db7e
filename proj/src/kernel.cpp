#include "appell/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace appell::num {

namespace {

cplx ipow(cplx base, long long n)
{
    if (n < 0) {
        return 1.0 / ipow(base, -n);
    }
    cplx result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) {
            result *= base;
        }
        base *= base;
        n >>= 1;
    }
    return result;
}

void require_nonzero(cplx z, const char* what)
{
    if (z == cplx{}) {
        throw DomainError(std::string(what) + " must be nonzero");
    }
}

// Sums contribution(n, w^{n^2} y^n) over n in Z, walking outward from n = 0
// in both directions. A direction stops at the first index whose
// contribution is below eps_term times the running sum of magnitudes, once
// the Gaussian numerator has passed its peak and at least min_terms indices
// have been visited.
template <class Contribution>
cplx bilateral_sum(cplx w, cplx y, const TruncationPolicy& pol, int min_terms, Contribution&& contribution)
{
    pol.validate();
    require_nonzero(y, "argument");
    const double aw = std::abs(w);
    const double ay = std::abs(y);
    const cplx w2 = w * w;

    cplx sum = contribution(0, cplx{1.0, 0.0});
    double scale = std::abs(sum);

    for (int dir : {+1, -1}) {
        const cplx step = dir > 0 ? y : 1.0 / y;
        const double astep = dir > 0 ? ay : 1.0 / ay;
        cplx t{1.0, 0.0};
        cplx odd = w; // w^{2k+1} for the transition k -> k+1
        double aodd = aw;
        bool done = false;
        for (int k = 0; k < pol.n_max; ++k) {
            t *= odd * step;
            odd *= w2;
            const int n = dir * (k + 1);
            const cplx c = contribution(n, t);
            const double ac = std::abs(c);
            const bool past_peak = aodd * astep < 1.0;
            aodd *= aw * aw;
            if (k + 1 > min_terms && past_peak && ac < pol.eps_term * scale) {
                done = true;
                break;
            }
            sum += c;
            scale += ac;
        }
        if (!done) {
            throw ConvergenceError("bilateral series did not converge within n_max terms");
        }
    }
    return sum;
}

cplx gauss_sum(cplx w, cplx y, const TruncationPolicy& pol)
{
    return bilateral_sum(w, y, pol, 0, [](int, cplx t) { return t; });
}

} // namespace

Nome::Nome(cplx u) : u_(u)
{
    const double au = std::abs(u);
    if (!(au > 0.0 && au < 1.0)) {
        throw DomainError("half-nome u must satisfy 0 < |u| < 1");
    }
}

QuarterNome::QuarterNome(cplx v) : v_(v)
{
    const double av = std::abs(v);
    if (!(av > 0.0 && av < 1.0)) {
        throw DomainError("quarter nome v must satisfy 0 < |v| < 1");
    }
}

void TruncationPolicy::validate() const
{
    if (!(eps_term > 0.0 && eps_term < 1.0)) {
        throw DomainError("eps_term must lie in (0, 1)");
    }
    if (n_max < 8) {
        throw DomainError("n_max must be at least 8");
    }
}

double pole_guard(cplx a) noexcept
{
    return 1e-8 * std::max(1.0, std::abs(a));
}

cplx theta(cplx z, const Nome& u, const TruncationPolicy& pol)
{
    return gauss_sum(u.u(), z, pol);
}

cplx theta2(cplx z, const Nome& u, const TruncationPolicy& pol)
{
    return gauss_sum(u.q(), z, pol);
}

cplx vartheta0(cplx z, const QuarterNome& v, const TruncationPolicy& pol)
{
    require_nonzero(z, "z");
    const cplx q = ipow(v.v(), 4);
    return gauss_sum(q, z * z, pol);
}

cplx vartheta1(cplx z, const QuarterNome& v, const TruncationPolicy& pol)
{
    require_nonzero(z, "z");
    // v^{(2n+1)^2} z^{2n+1} = v z * q^{n^2} (q z^2)^n with q = v^4.
    const cplx q = ipow(v.v(), 4);
    return v.v() * z * gauss_sum(q, q * z * z, pol);
}

cplx kappa(cplx a, cplx z, const Nome& u, const TruncationPolicy& pol)
{
    require_nonzero(a, "a");
    require_nonzero(z, "z");
    const cplx q = u.q();
    const double guard = pole_guard(a);
    // Indices |n| <= 3 are always visited so the guard sees the nearest poles
    // even when the numerators underflow immediately.
    return bilateral_sum(u.u(), z, pol, 3, [&](int n, cplx t) {
        const cplx qn = ipow(q, n);
        if (std::abs(qn - a) < guard) {
            throw PoleProximityError("kappa: a is within the pole guard of q^" + std::to_string(n));
        }
        if (n >= 0) {
            return t / (qn - a);
        }
        // u^{n^2}/(q^n - a) = u^{n^2} q^{-n} / (1 - a q^{-n}); avoids the
        // large intermediate q^n for negative n.
        const cplx qm = 1.0 / qn;
        return t * qm / (1.0 - a * qm);
    });
}

cplx kappa_bar(cplx a, cplx z, const Nome& u, const TruncationPolicy& pol)
{
    return theta(-a / u.u(), u, pol) * kappa(a, z, u, pol);
}

cplx qpochhammer(cplx x, cplx q, const TruncationPolicy& pol)
{
    pol.validate();
    if (!(std::abs(q) < 1.0)) {
        throw DomainError("qpochhammer requires |q| < 1");
    }
    cplx product{1.0, 0.0};
    cplx xk = x;
    for (int k = 0; k < pol.n_max; ++k) {
        if (std::abs(xk) < pol.eps_term) {
            return product;
        }
        product *= 1.0 - xk;
        xk *= q;
    }
    throw ConvergenceError("qpochhammer did not converge within n_max factors");
}

cplx dtheta_dz(cplx z, const Nome& u, const TruncationPolicy& pol)
{
    require_nonzero(z, "z");
    return bilateral_sum(u.u(), z, pol, 0, [](int n, cplx t) { return static_cast<double>(n) * t; }) / z;
}

} // namespace appell::num
