#include "ramasum/formal_series.hpp"

#include <sstream>

#include "ramasum/errors.hpp"

namespace ramasum {

Rational FormalSeries::coeff(long k) const {
    if (k < offset_) return Rational(0);
    size_t idx = static_cast<size_t>(k - offset_);
    if (idx >= coeffs_.size())
        throw TruncationError("FormalSeries: coefficient " + std::to_string(k) +
                              " beyond truncation order " + std::to_string(order()));
    return coeffs_[idx];
}

FormalSeries FormalSeries::truncated(long new_order) const {
    if (new_order > order()) throw TruncationError("FormalSeries: cannot extend by truncation");
    std::vector<Rational> c(coeffs_.begin(),
                            coeffs_.begin() + static_cast<size_t>(new_order - offset_));
    return FormalSeries(offset_, std::move(c));
}

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
    long off = std::min(a.offset_, b.offset_);
    long ord = std::min(a.order(), b.order());
    std::vector<Rational> c(static_cast<size_t>(ord - off), Rational(0));
    for (long k = off; k < ord; ++k) {
        Rational v(0);
        if (k >= a.offset_ && k < a.order()) v += a.coeffs_[static_cast<size_t>(k - a.offset_)];
        if (k >= b.offset_ && k < b.order()) v += b.coeffs_[static_cast<size_t>(k - b.offset_)];
        c[static_cast<size_t>(k - off)] = v;
    }
    return FormalSeries(off, std::move(c));
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
    return a + b * Rational(-1);
}

FormalSeries FormalSeries::operator*(const Rational& c) const {
    std::vector<Rational> out(coeffs_);
    for (auto& q : out) q *= c;
    return FormalSeries(offset_, std::move(out));
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
    // truncation: order of the product limited by both factors
    long off = a.offset_ + b.offset_;
    long ord = std::min(a.order() + b.offset_, b.order() + a.offset_);
    std::vector<Rational> c(static_cast<size_t>(ord - off), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) {
            long k = a.offset_ + static_cast<long>(i) + b.offset_ + static_cast<long>(j);
            if (k >= ord) break;
            c[static_cast<size_t>(k - off)] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return FormalSeries(off, std::move(c));
}

FormalSeries operator/(const FormalSeries& a, const FormalSeries& b) {
    // locate leading nonzero of b
    size_t lead = 0;
    while (lead < b.coeffs_.size() && b.coeffs_[lead] == 0) ++lead;
    if (lead == b.coeffs_.size())
        throw DomainError("FormalSeries: division by zero series");
    long boff = b.offset_ + static_cast<long>(lead);
    Rational binv = 1 / b.coeffs_[lead];
    long off = a.offset_ - boff;
    long ord = std::min(a.order() - boff, off + (b.order() - boff));
    if (ord <= off) throw TruncationError("FormalSeries: division exhausts truncation order");
    std::vector<Rational> q(static_cast<size_t>(ord - off), Rational(0));
    std::vector<Rational> rem(a.coeffs_);
    for (long k = off; k < ord; ++k) {
        long apos = (k + boff) - a.offset_;
        Rational v = (apos >= 0 && apos < static_cast<long>(rem.size()))
                         ? rem[static_cast<size_t>(apos)]
                         : Rational(0);
        Rational qk = v * binv;
        q[static_cast<size_t>(k - off)] = qk;
        if (qk == 0) continue;
        // subtract qk z^k * b from the remainder
        for (size_t j = lead; j < b.coeffs_.size(); ++j) {
            long pos = k + b.offset_ + static_cast<long>(j) - a.offset_;
            if (pos < 0 || pos >= static_cast<long>(rem.size())) continue;
            rem[static_cast<size_t>(pos)] -= qk * b.coeffs_[j];
        }
    }
    return FormalSeries(off, std::move(q));
}

FormalSeries FormalSeries::derivative() const {
    std::vector<Rational> c;
    c.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        long k = offset_ + static_cast<long>(i);
        if (k == 0) continue;
        c.push_back(coeffs_[i] * Rational(k));
    }
    long off = offset_ == 0 ? 0 : offset_ - 1;
    // when offset_ == 0 the constant term is dropped entirely
    if (offset_ == 0) return FormalSeries(0, [&] {
        std::vector<Rational> d;
        for (size_t i = 1; i < coeffs_.size(); ++i)
            d.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
        return d;
    }());
    return FormalSeries(off, std::move(c));
}

FormalSeries FormalSeries::integral() const {
    std::vector<Rational> c(coeffs_.size() + (offset_ >= 0 ? 1 : 0), Rational(0));
    long off = offset_ >= 0 ? 0 : offset_ + 1;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        long k = offset_ + static_cast<long>(i);
        if (k == -1) {
            if (coeffs_[i] != 0)
                throw DomainError("FormalSeries: cannot integrate a z^{-1} term");
            continue;
        }
        long pos = (k + 1) - off;
        if (pos >= 0 && pos < static_cast<long>(c.size()))
            c[static_cast<size_t>(pos)] = coeffs_[i] / Rational(k + 1);
    }
    return FormalSeries(off, std::move(c));
}

FormalSeries FormalSeries::log_unit() const {
    if (offset_ > 0 || coeff(0) != 1)
        throw DomainError("FormalSeries: log requires a unit series (constant term 1)");
    // log(S) = integral(S'/S)
    return (derivative() / *this).integral();
}

FormalSeries FormalSeries::scale_argument(const Rational& c) const {
    std::vector<Rational> out(coeffs_);
    Rational p(1);
    // z^k -> c^k z^k; handle negative offset with inverse powers
    for (size_t i = 0; i < out.size(); ++i) {
        long k = offset_ + static_cast<long>(i);
        Rational ck(1);
        if (k >= 0) {
            for (long t = 0; t < k; ++t) ck *= c;
        } else {
            if (c == 0) throw DomainError("FormalSeries: scale by zero with Laurent part");
            for (long t = 0; t < -k; ++t) ck /= c;
        }
        out[i] *= ck;
    }
    (void)p;
    return FormalSeries(offset_, std::move(out));
}

BigReal FormalSeries::evaluate(const BigReal& z, const PrecisionContext& ctx) const {
    BigReal acc = BigReal::zero(ctx);
    BigReal zp = offset_ == 0 ? BigReal::from_long(1, ctx)
                              : pow_si(z, offset_, ctx);
    BigReal last_mag = BigReal::zero(ctx);
    BigReal prev_mag = BigReal::zero(ctx);
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        BigReal term = to_bigreal(coeffs_[i], ctx) * zp;
        acc += term;
        prev_mag = last_mag;
        last_mag = abs(term);
        zp *= z;
    }
    // geometric tail estimate from the trailing nonzero magnitudes
    BigReal r = BigReal::from_double(0.5, ctx);
    if (!prev_mag.is_zero()) {
        BigReal rr = last_mag / prev_mag;
        if (rr > r) r = rr;
    }
    if (r < BigReal::from_double(0.9, ctx)) {
        BigReal tail = last_mag * r / (BigReal::from_long(1, ctx) - r);
        BigReal e = acc.err() + tail;
        acc.set_err(e);
    } else {
        acc.bump_err_ulps(1ul << 20);  // ratio too close to 1: flag a weak bound
    }
    return acc;
}

std::string FormalSeries::to_string(long up_to) const {
    std::ostringstream os;
    bool first = true;
    for (long k = offset_; k < std::min(order(), up_to); ++k) {
        Rational c = coeff(k);
        if (c == 0) continue;
        if (!first) os << " + ";
        os << c.get_str() << "*z^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

// ---------------------------------------------------------------------------
// named series
// ---------------------------------------------------------------------------

namespace {

FormalSeries bernoulli_gf(long K) {
    std::vector<Rational> c;
    for (long n = 0; n < K; ++n)
        c.push_back(bernoulli_number(static_cast<unsigned long>(n)) /
                    Rational(factorial(static_cast<unsigned long>(n))));
    return FormalSeries(0, std::move(c));
}

FormalSeries log_one_minus_exp_over_z(long K) {
    std::vector<Rational> c;
    c.push_back(Rational(0));
    for (long n = 1; n < K; ++n)
        c.push_back(bernoulli_number(static_cast<unsigned long>(n)) / Rational(n) /
                    Rational(factorial(static_cast<unsigned long>(n))));
    return FormalSeries(0, std::move(c));
}

FormalSeries inv_one_minus_exp(long K) {
    // 1/(1 - e^{-z}): (1 - e^{-z}) = sum_{n>=1} (-1)^{n+1} z^n/n!
    std::vector<Rational> denom;
    denom.push_back(Rational(0));
    for (long n = 1; n < K + 2; ++n) {
        Rational q = Rational(1) / Rational(factorial(static_cast<unsigned long>(n)));
        if (n % 2 == 0) q = -q;
        denom.push_back(q);
    }
    FormalSeries one(0, {Rational(1)});
    // pad the numerator so the quotient carries K coefficients
    std::vector<Rational> oc(static_cast<size_t>(K + 2), Rational(0));
    oc[0] = Rational(1);
    FormalSeries num(0, std::move(oc));
    return num / FormalSeries(0, std::move(denom));
}

FormalSeries ei_entire_part(long K) {
    std::vector<Rational> c;
    c.push_back(Rational(0));
    for (long n = 1; n < K; ++n) {
        Rational q = Rational(1) / Rational(n) /
                     Rational(factorial(static_cast<unsigned long>(n)));
        if (n % 2 == 1) q = -q;
        c.push_back(q);
    }
    return FormalSeries(0, std::move(c));
}

FormalSeries exp_z(long K) {
    std::vector<Rational> c;
    for (long n = 0; n < K; ++n)
        c.push_back(Rational(1) / Rational(factorial(static_cast<unsigned long>(n))));
    return FormalSeries(0, std::move(c));
}

FormalSeries lemma1_qpart(long K, long inner_extra) {
    // precompute H_i and H_i/i! to keep the double sum quadratic
    std::vector<Rational> H(static_cast<size_t>(K) + 2, Rational(0));
    std::vector<Rational> HoF(static_cast<size_t>(K) + 2, Rational(0));
    for (long i = 1; i <= K + 1; ++i) {
        H[static_cast<size_t>(i)] = H[static_cast<size_t>(i - 1)] + Rational(1) / Rational(i);
        HoF[static_cast<size_t>(i)] =
            H[static_cast<size_t>(i)] / Rational(factorial(static_cast<unsigned long>(i)));
    }
    std::vector<Rational> c;
    c.push_back(Rational(0));
    for (long k = 1; k < K; ++k) {
        auto uk = static_cast<unsigned long>(k);
        Rational v = H[static_cast<size_t>(k)] *
                     (Rational(1) - bernoulli_number(uk + 1)) / Rational(k + 1) /
                     Rational(factorial(uk));
        for (long m = 1; m <= k + inner_extra; ++m) {
            long idx = k - m + 1;
            if (idx < 0) continue;
            v += bernoulli_number(static_cast<unsigned long>(m)) /
                 Rational(factorial(static_cast<unsigned long>(m))) * HoF[static_cast<size_t>(idx)];
        }
        c.push_back(v);
    }
    return FormalSeries(0, std::move(c));
}

}  // namespace

FormalSeries lemma1_qpart_extended_bound(long K) { return lemma1_qpart(K, 1); }

FormalSeries formal_series(SeriesKind kind, long K) {
    if (K < 1) throw TruncationError("formal_series: K must be >= 1");
    switch (kind) {
        case SeriesKind::BernoulliGF: return bernoulli_gf(K);
        case SeriesKind::LogOneMinusExpOverZ: return log_one_minus_exp_over_z(K);
        case SeriesKind::InvOneMinusExp: return inv_one_minus_exp(K);
        case SeriesKind::EiEntirePart: return ei_entire_part(K);
        case SeriesKind::ExpZ: return exp_z(K);
        case SeriesKind::Lemma1QPart: return lemma1_qpart(K, 0);
        case SeriesKind::Lemma2QPart: {
            FormalSeries w = ei_entire_part(K + 1) - log_one_minus_exp_over_z(K + 1);
            return inv_one_minus_exp(K + 1) * w;
        }
        case SeriesKind::Theorem1QPart: {
            FormalSeries q2 = formal_series(SeriesKind::Lemma2QPart, K + 1);
            return lemma1_qpart(K, 0) + exp_z(K) * q2;
        }
    }
    throw Error("formal_series: unreachable");
}

Rational corollary_rational(long k) {
    if (k < 0) throw DomainError("corollary_rational: k must be >= 0");
    FormalSeries q = formal_series(SeriesKind::Theorem1QPart, k + 2);
    return q.coeff(k);
}

Rational corollary_rho(long k) {
    if (k < 0) throw DomainError("corollary_rho: k must be >= 0");
    FormalSeries q = formal_series(SeriesKind::Theorem1QPart, k + 2);
    Rational rho(0);
    for (long j = 0; j <= k; ++j) {
        Rational u = Rational(factorial(static_cast<unsigned long>(j))) * q.coeff(j) +
                     Rational(1) / Rational((j + 1) * (j + 1));
        Rational c(binomial(static_cast<unsigned long>(k), static_cast<unsigned long>(j)));
        if (j % 2 == 1) c = -c;
        rho += c * u;
    }
    return rho;
}

}  // namespace ramasum
