// formal_series.hpp — exact rational Laurent series (offset may be -1) used
// to extract the rational parts that the theorem1/corollary1 identities
// leave implicit ("mod Q[[z]]" / "mod Q").
#pragma once

#include <string>
#include <vector>

#include "ramasum/precision.hpp"
#include "ramasum/rational.hpp"

namespace ramasum {

class FormalSeries {
public:
    FormalSeries() = default;
    FormalSeries(long offset, std::vector<Rational> coeffs)
        : offset_(offset), coeffs_(std::move(coeffs)) {}

    long offset() const { return offset_; }
    // number of stored coefficients; powers offset..offset+size-1 are valid
    size_t size() const { return coeffs_.size(); }
    long order() const { return offset_ + static_cast<long>(coeffs_.size()); }

    // coefficient of z^k; TruncationError beyond the stored order
    Rational coeff(long k) const;

    FormalSeries truncated(long new_order) const;

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
    friend FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
    FormalSeries operator*(const Rational& c) const;

    // division by a series with non-vanishing leading coefficient
    friend FormalSeries operator/(const FormalSeries& a, const FormalSeries& b);

    FormalSeries derivative() const;
    // termwise antiderivative with zero constant; requires no z^{-1} term
    FormalSeries integral() const;
    // log of a series with constant term 1
    FormalSeries log_unit() const;
    // substitute z -> c z
    FormalSeries scale_argument(const Rational& c) const;

    // numeric evaluation of the stored prefix; err gets a geometric tail
    // estimate from the trailing coefficients
    BigReal evaluate(const BigReal& z, const PrecisionContext& ctx) const;

    std::string to_string(long up_to) const;

private:
    long offset_ = 0;
    std::vector<Rational> coeffs_;
};

enum class SeriesKind {
    BernoulliGF,           // z/(e^z - 1)
    LogOneMinusExpOverZ,   // log((1 - e^{-z})/z) = sum_{n>=1} B_n/n z^n/n!
    InvOneMinusExp,        // 1/(1 - e^{-z}), Laurent offset -1
    EiEntirePart,          // sum_{n>=1} (-1)^n z^n/(n n!)
    ExpZ,                  // e^z
    Lemma1QPart,           // sum_k z^k [ H_k/k! (1-B_{k+1})/(k+1) + sum_m B_m/m! H_{k-m+1}/(k-m+1)! ]
    Lemma2QPart,           // 1/(1-e^{-z}) * ( -log((1-e^{-z})/z) + EiEntirePart )
    Theorem1QPart,         // Lemma1QPart + ExpZ * Lemma2QPart
};

// series of `kind` holding coefficients up to order K (exclusive)
FormalSeries formal_series(SeriesKind kind, long K);

// Lemma 1 double sum with the inner bound m <= k+1 instead of m <= k; the
// two agree identically because H_0 = 0 (checked in tests).
FormalSeries lemma1_qpart_extended_bound(long K);

// q_k: coefficient of z^k in Theorem 1's rational series part, so that
//   sumR e^{nz} log n + e^z sumR e^{-nz} H_n = gamma (e^z/(1-e^{-z}) - 1/z) + sum q_k z^k.
// Exact; independent of internal truncation once it covers k (K >= k+2).
Rational corollary_rational(long k);

// rho_k: the rational constant completing Corollary 1,
//   sumR n^k H_n = gamma (1-B_{k+1})/(k+1) - log sqrt(2 pi)
//                + sum_{m=1}^{k} C(k,m) (-1)^m zeta'(-m) + rho_k.
// Derived from q_0..q_k by binomial inversion.
Rational corollary_rho(long k);

}  // namespace ramasum
