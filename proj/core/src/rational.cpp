#include "ramasum/rational.hpp"

#include <mutex>

#include "ramasum/errors.hpp"

namespace ramasum {

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw DomainError("rational_from_string: empty literal");
    // a/b form handled by GMP directly
    if (text.find('/') != std::string::npos) {
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
            throw DomainError("rational_from_string: bad literal '" + text + "'");
        if (sgn(Rational(q.get_den())) == 0)
            throw DomainError("rational_from_string: zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent: sign digits [. digits] [e|E sign digits]
    std::string mant = text;
    long exp10 = 0;
    size_t epos = mant.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(mant.substr(epos + 1));
        mant.erase(epos);
    }
    size_t dot = mant.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+")
        throw DomainError("rational_from_string: bad literal '" + text + "'");
    Integer m;
    if (mpz_set_str(m.get_mpz_t(), mant.c_str(), 10) != 0)
        throw DomainError("rational_from_string: bad literal '" + text + "'");
    Rational q(m);
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        q *= Rational(p10);
    else
        q /= Rational(p10);
    q.canonicalize();
    return q;
}

BigReal to_bigreal(const Rational& q, const PrecisionContext& ctx) {
    BigReal r = BigReal::zero(ctx);
    mpfr_set_q(r.raw_mut(), q.get_mpq_t(), MPFR_RNDN);
    r.bump_err_ulps(1);
    return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

struct BernoulliCache::Impl {
    std::mutex mu;
    std::vector<Rational> table;
};

BernoulliCache::BernoulliCache() : impl_(new Impl) {
    impl_->table.push_back(Rational(1));
    impl_->table.push_back(Rational(-1, 2));
}

BernoulliCache& BernoulliCache::instance() {
    static BernoulliCache cache;
    return cache;
}

void BernoulliCache::ensure(unsigned long n) {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& t = impl_->table;
    while (t.size() <= n) {
        unsigned long m = t.size();
        if (m % 2 == 1 && m > 1) {
            t.push_back(Rational(0));
            continue;
        }
        Rational s(0);
        for (unsigned long j = 0; j + 1 < m + 1; ++j)  // j = 0..m-1
            s += Rational(binomial(m + 1, j)) * t[j];
        s /= Rational(binomial(m + 1, m));  // C(m+1, m) = m+1
        t.push_back(-s);
    }
}

Rational BernoulliCache::get(unsigned long n) {
    ensure(n);
    std::lock_guard<std::mutex> lock(impl_->mu);
    return impl_->table[n];
}

Rational bernoulli_number(unsigned long n) { return BernoulliCache::instance().get(n); }

Rational harmonic_number(unsigned long n, unsigned long j) {
    if (j < 1) throw DomainError("harmonic_number: j must be >= 1");
    Rational s(0);
    for (unsigned long m = 1; m <= n; ++m) {
        Integer mj;
        mpz_ui_pow_ui(mj.get_mpz_t(), m, j);
        s += Rational(1) / Rational(mj);
    }
    return s;
}

}  // namespace ramasum
