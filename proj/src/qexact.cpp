#include "appell/qexact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace appell::qexact {

namespace {

std::size_t common(const USeries& l, const USeries& r)
{
    return std::min(l.trunc(), r.trunc());
}

// Adds sign * u^e / (1 - g u^k) into acc, without materializing the
// geometric series.
void add_over_geom(std::vector<Rational>& acc, const Rational& coeff, std::size_t e, int g, std::size_t k)
{
    Rational c = coeff;
    for (std::size_t p = e; p < acc.size(); p += k) {
        acc[p] += c;
        if (g < 0) {
            c = -c;
        }
    }
}

std::size_t isqrt(std::size_t n)
{
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r;
}

} // namespace

USeries::USeries(std::size_t trunc) : coeffs_(trunc)
{
    if (trunc == 0) {
        throw std::invalid_argument("USeries truncation must be positive");
    }
}

USeries::USeries(std::size_t trunc, std::vector<Rational> coeffs) : USeries(trunc)
{
    for (std::size_t k = 0; k < std::min(trunc, coeffs.size()); ++k) {
        coeffs_[k] = std::move(coeffs[k]);
    }
}

USeries USeries::monomial(std::size_t trunc, std::size_t exponent, Rational coeff)
{
    USeries s(trunc);
    if (exponent < trunc) {
        s.coeffs_[exponent] = std::move(coeff);
    }
    return s;
}

USeries USeries::with_coeff(std::size_t k, Rational value) const
{
    USeries s = *this;
    s.coeffs_.at(k) = std::move(value);
    return s;
}

USeries USeries::truncated(std::size_t trunc) const
{
    return USeries(trunc, std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + std::min(trunc, this->trunc())));
}

USeries operator+(const USeries& l, const USeries& r)
{
    USeries s(common(l, r));
    for (std::size_t k = 0; k < s.trunc(); ++k) {
        s.coeffs_[k] = l.coeffs_[k] + r.coeffs_[k];
    }
    return s;
}

USeries operator-(const USeries& l, const USeries& r)
{
    return l + (-r);
}

USeries operator-(const USeries& s)
{
    USeries out(s.trunc());
    for (std::size_t k = 0; k < s.trunc(); ++k) {
        out.coeffs_[k] = -s.coeffs_[k];
    }
    return out;
}

USeries operator*(const USeries& l, const USeries& r)
{
    const std::size_t n = common(l, r);
    USeries s(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (l.coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; i + j < n; ++j) {
            if (r.coeffs_[j] != 0) {
                s.coeffs_[i + j] += l.coeffs_[i] * r.coeffs_[j];
            }
        }
    }
    return s;
}

USeries operator*(const Rational& c, const USeries& s)
{
    USeries out(s.trunc());
    for (std::size_t k = 0; k < s.trunc(); ++k) {
        out.coeffs_[k] = c * s.coeffs_[k];
    }
    return out;
}

bool operator==(const USeries& l, const USeries& r)
{
    return l.trunc() == r.trunc() && l.coeffs_ == r.coeffs_;
}

std::complex<double> USeries::evaluate(std::complex<double> u) const
{
    // Horner from the top coefficient down.
    std::complex<double> acc{};
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        acc = acc * u + coeffs_[k].convert_to<double>();
    }
    return acc;
}

std::ostream& operator<<(std::ostream& os, const USeries& s)
{
    bool first = true;
    for (std::size_t k = 0; k < s.trunc(); ++k) {
        if (s[k] == 0) {
            continue;
        }
        os << (first ? "" : " + ") << "(" << s[k] << ")u^" << k;
        first = false;
    }
    if (first) {
        os << "0";
    }
    return os << " + O(u^" << s.trunc() << ")";
}

std::optional<std::size_t> first_mismatch(const USeries& l, const USeries& r)
{
    for (std::size_t k = 0; k < common(l, r); ++k) {
        if (l[k] != r[k]) {
            return k;
        }
    }
    return std::nullopt;
}

USeries geom_inverse(int sign, std::size_t k, std::size_t trunc)
{
    if (k == 0) {
        throw std::invalid_argument("geom_inverse: k must be positive (1/(1 - u^0) is undefined)");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("geom_inverse: sign must be +1 or -1");
    }
    std::vector<Rational> c(trunc);
    add_over_geom(c, 1, 0, sign, k);
    return USeries(trunc, std::move(c));
}

USeries theta_null(ThetaNull which, std::size_t trunc)
{
    std::vector<Rational> c(trunc);
    if (which == ThetaNull::half) {
        // n and -1-n give the same exponent n^2 + n.
        for (std::size_t n = 0; n * n + n < trunc; ++n) {
            c[n * n + n] += 2;
        }
        return USeries(trunc, std::move(c));
    }
    c[0] = 1;
    for (std::size_t n = 1; n * n < trunc; ++n) {
        c[n * n] += (which == ThetaNull::minus && n % 2 == 1) ? -2 : 2;
    }
    return USeries(trunc, std::move(c));
}

USeries triangular_gf(std::size_t trunc)
{
    std::vector<Rational> c(trunc);
    for (std::size_t n = 0; n * n + n < trunc; ++n) {
        c[n * n + n] += 1;
    }
    return USeries(trunc, std::move(c));
}

USeries kappa_special_series(KappaSpecial which, std::size_t trunc)
{
    std::vector<Rational> c(trunc);
    switch (which) {
    case KappaSpecial::pp:
        // kappa(u, z) = sum_{n>=0} u^{n^2+2n}/(1-u^{2n+1}) (z^{-n} - z^{n+1}) at z = -1.
        for (std::size_t n = 0; n * n + 2 * n < trunc; ++n) {
            add_over_geom(c, n % 2 == 0 ? 2 : -2, n * n + 2 * n, +1, 2 * n + 1);
        }
        break;
    case KappaSpecial::mp:
        // kappa(-u, z) = sum_{n>=0} u^{n^2+2n}/(1+u^{2n+1}) (z^{-n} + z^{n+1}) at z = 1.
        for (std::size_t n = 0; n * n + 2 * n < trunc; ++n) {
            add_over_geom(c, 2, n * n + 2 * n, -1, 2 * n + 1);
        }
        break;
    case KappaSpecial::m_half:
        // kappa(-1, u) = sum_{n in Z} u^{n^2+n}/(1 + u^{2n}). The n = 0 term is 1/2.
        // For n >= 1 the term is a valid expansion as written; for the index
        // -n it is rewritten as u^{n^2-n} u^{2n}/(1 + u^{2n}) = u^{n^2+n}/(1 + u^{2n}),
        // so both halves have lowest exponent n^2 + n >= 2.
        c[0] += Rational(1, 2);
        for (std::size_t n = 1; n * n + n < trunc; ++n) {
            add_over_geom(c, 1, n * n + n, -1, 2 * n);       // index n
            add_over_geom(c, 1, n * n - n + 2 * n, -1, 2 * n); // index -n
        }
        break;
    }
    return USeries(trunc, std::move(c));
}

SpecialValues SpecialValues::compute(std::size_t trunc)
{
    return {theta_null(ThetaNull::plus, trunc),         theta_null(ThetaNull::minus, trunc),
            theta_null(ThetaNull::half, trunc),         kappa_special_series(KappaSpecial::pp, trunc),
            kappa_special_series(KappaSpecial::mp, trunc), kappa_special_series(KappaSpecial::m_half, trunc)};
}

Sides for1_sides(const SpecialValues& sv)
{
    const USeries& h = sv.theta_half;
    return {sv.theta_plus * sv.kappa_pp + sv.theta_minus * sv.kappa_mp, Rational(1, 2) * (h * h * h)};
}

Sides for2_sides(const SpecialValues& sv)
{
    const USeries& h = sv.theta_half;
    const USeries& p = sv.theta_plus;
    const USeries& m = sv.theta_minus;
    return {h * h * h * sv.kappa_m_half, m * m * m * sv.kappa_pp + p * p * p * sv.kappa_mp};
}

ExactVerdict compare(const Sides& sides)
{
    if (auto k = first_mismatch(sides.lhs, sides.rhs)) {
        return {false, k};
    }
    return {true, std::nullopt};
}

ExactVerdict check_for1_exact(std::size_t trunc)
{
    if (trunc < 2) {
        throw std::invalid_argument("check_for1_exact requires trunc >= 2");
    }
    return compare(for1_sides(SpecialValues::compute(trunc)));
}

ExactVerdict check_for2_exact(std::size_t trunc)
{
    if (trunc < 2) {
        throw std::invalid_argument("check_for2_exact requires trunc >= 2");
    }
    return compare(for2_sides(SpecialValues::compute(trunc)));
}

USeries double_sum_series(std::size_t trunc, int extra_shell)
{
    // q-exponents E = (n-l)^2 + l^2 + n and E + 2l + 1 = (n-l)^2 + (l+1)^2 + n
    // are both >= n and >= min(l^2, (l+1)^2); terms below q^Q therefore have
    // n < Q and |l| <= sqrt(Q) + 1.
    std::vector<Rational> c(trunc);
    const long long Q = static_cast<long long>((trunc + 1) / 2);
    const long long n_hi = Q - 1 + extra_shell;
    const long long l_hi = static_cast<long long>(isqrt(static_cast<std::size_t>(Q))) + 1 + extra_shell;
    for (long long n = 0; n <= n_hi; ++n) {
        const Rational sign = n % 2 == 0 ? 1 : -1;
        for (long long l = -l_hi; l <= l_hi; ++l) {
            const long long e1 = n * n + n - 2 * n * l + 2 * l * l;
            for (long long e : {e1, e1 + 2 * l + 1}) {
                const auto ue = static_cast<std::size_t>(2 * e);
                if (e >= 0 && ue < trunc) {
                    add_over_geom(c, sign, ue, +1, static_cast<std::size_t>(2 * (2 * n + 1)));
                }
            }
        }
    }
    return USeries(trunc, std::move(c));
}

USeries andrews_series(std::size_t trunc, int extra_shell)
{
    // q-exponent 2n^2 + 2n - j(j+1)/2 >= n for 0 <= j <= 2n, so n < Q.
    std::vector<Rational> c(trunc);
    const long long Q = static_cast<long long>((trunc + 1) / 2);
    for (long long n = 0; n <= Q - 1 + extra_shell; ++n) {
        for (long long j = 0; j <= 2 * n; ++j) {
            const long long e1 = 2 * n * n + 2 * n - j * (j + 1) / 2;
            for (long long e : {e1, e1 + 2 * n + 1}) {
                const auto ue = static_cast<std::size_t>(2 * e);
                if (ue < trunc) {
                    add_over_geom(c, 1, ue, +1, static_cast<std::size_t>(2 * (2 * n + 1)));
                }
            }
        }
    }
    return USeries(trunc, std::move(c));
}

TriangularCounts triangular_counts_bruteforce(std::size_t M)
{
    if (M == 0) {
        throw std::invalid_argument("triangular_counts_bruteforce requires M >= 1");
    }
    std::vector<std::size_t> tri;
    for (std::size_t n = 0; n * (n + 1) / 2 < M; ++n) {
        tri.push_back(n * (n + 1) / 2);
    }
    TriangularCounts out{std::vector<std::uint64_t>(M, 0)};
    for (std::size_t a : tri) {
        for (std::size_t b : tri) {
            for (std::size_t c : tri) {
                if (a + b + c < M) {
                    ++out.counts[a + b + c];
                }
            }
        }
    }
    return out;
}

void write_csv(std::ostream& os, const USeries& s)
{
    for (std::size_t k = 0; k < s.trunc(); ++k) {
        os << k << ',' << numerator(s[k]) << ',' << denominator(s[k]) << '\n';
    }
}

} // namespace appell::qexact
