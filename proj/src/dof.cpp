#include "hetnet/dof.hpp"

#include "hetnet/errors.hpp"

#include <numeric>
#include <string>

namespace hetnet {
namespace dof {

namespace {

long long reduce_pair(long long& n, long long& d) {
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return g;
}

void check_query(const DofQuery& q) {
    if (q.K < 1 || q.L < 1 || q.N < 1 || q.M_r < 1) {
        throw InvalidParameterError("dof query requires K, L, N, M_r >= 1");
    }
    if (q.x < 0) {
        throw InvalidParameterError("dof query requires x >= 0");
    }
}

void check_tdma_slots(const DofQuery& q, int t, const char* scheme) {
    if (q.T != t) {
        throw InvalidParameterError(std::string("TDMA comparison for the ") + scheme +
                                    " scheme runs over T = " + std::to_string(t) +
                                    " slots, got T = " + std::to_string(q.T));
    }
    if (q.x > t) {
        throw InvalidParameterError("cannot grant the femtocells more slots than the supersymbol has");
    }
}

} // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) {
        throw InvalidParameterError("rational with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
}

std::string Rational::str() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::reduced() const {
    long long n = num;
    long long d = den;
    reduce_pair(n, d);
    return Rational(n, d);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.den == b.den) {
        return Rational(a.num + b.num, a.den); // keep the display denominator
    }
    long long an = a.num, ad = a.den, bn = b.num, bd = b.den;
    reduce_pair(an, ad);
    reduce_pair(bn, bd);
    return Rational(an * bd + bn * ad, ad * bd);
}

Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
    long long an = a.num, ad = a.den, bn = b.num, bd = b.den;
    reduce_pair(an, bd); // cross-reduce before multiplying
    reduce_pair(bn, ad);
    return Rational(an * bn, ad * bd);
}

bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
bool operator>(const Rational& a, const Rational& b) { return b < a; }
bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

DofReport dof_hybrid(const DofQuery& q) {
    check_query(q);
    const long long t = q.L + 1;
    DofReport r;
    r.macrocell = Rational(static_cast<long long>(q.K) * q.N, t);
    r.femtocells = Rational(static_cast<long long>(q.K) * q.L * q.N, t);
    r.total = r.macrocell + r.femtocells;
    return r;
}

DofReport dof_tdma_hybrid_comparison(const DofQuery& q) {
    check_query(q);
    const int t = q.L + 1;
    check_tdma_slots(q, t, "hybrid");
    DofReport r;
    r.macrocell = Rational(static_cast<long long>(t - q.x) * q.N, t);
    r.femtocells = Rational(static_cast<long long>(q.x) * q.K * q.N, t);
    r.total = r.macrocell + r.femtocells;
    return r;
}

Rational hybrid_gain(const DofQuery& q) {
    return dof_hybrid(q).total - dof_tdma_hybrid_comparison(q).total;
}

DofReport dof_blind_ia(const DofQuery& q) {
    check_query(q);
    const long long t = q.K + 1;
    DofReport r;
    r.macrocell = Rational(static_cast<long long>(q.K) * q.N, t);
    if (q.L == 1) {
        if (q.M_r != q.N && q.M_r != q.N - 1) {
            throw UnsupportedTopologyError("single-femtocell alignment needs M_r in {N-1, N}");
        }
        const long long per_femto = static_cast<long long>(q.K - 1) * (q.M_r - 1) + 1;
        r.femtocells = Rational(static_cast<long long>(q.K) * per_femto, t);
    } else if (q.L <= 3) {
        if (q.L > q.N) {
            throw UnsupportedTopologyError("grouped femtocell alignment needs L <= N");
        }
        if (q.M_r != q.N) {
            throw UnsupportedTopologyError("grouped femtocell alignment needs M_r = N");
        }
        const long long wide = static_cast<long long>(q.K - 1) * (q.N - q.L + 1);
        const long long per_cluster = static_cast<long long>(q.L - 1) * wide + 1;
        r.femtocells = Rational(q.K * per_cluster, t);
    } else {
        throw UnsupportedTopologyError("grouped femtocell alignment supports at most 3 femtocells per cluster");
    }
    r.total = r.macrocell + r.femtocells;
    return r;
}

DofReport dof_tdma_blind_comparison(const DofQuery& q) {
    check_query(q);
    const int t = q.K + 1;
    check_tdma_slots(q, t, "blind-alignment");
    DofReport r;
    r.macrocell = Rational(static_cast<long long>(t - q.x) * q.N, t);
    if (q.L == 1) {
        r.femtocells = Rational(static_cast<long long>(q.x) * q.K * q.M_r, t);
    } else if (q.x % 2 == 1) {
        // Odd slot counts: (x-1)/2 reuse rounds for every femtocell plus one
        // round covering L-1 of them.
        const long long rounds = (q.x - 1) / 2;
        r.femtocells = Rational(rounds * q.K * q.N * q.L +
                                    static_cast<long long>(q.K) * (q.L - 1) * q.N,
                                t);
    } else {
        r.femtocells = Rational((q.x / 2) * static_cast<long long>(q.K) * q.N * q.L, t);
    }
    r.total = r.macrocell + r.femtocells;
    return r;
}

Rational blind_ia_gain_threshold(const DofQuery& q) {
    check_query(q);
    const long long t = q.K + 1;
    const long long K = q.K, L = q.L, N = q.N, M = q.M_r;
    if (q.L == 1) {
        const long long den = M * K - N;
        if (den <= 0) {
            throw InvalidParameterError("TDMA never trails the aligned scheme here; no finite crossover");
        }
        const long long num = K * (N + (K - 1) * (M - 1) + 1) - N * t;
        return Rational(num, den);
    }
    if (K * L <= 2) {
        throw InvalidParameterError("crossover threshold needs K*L > 2");
    }
    // B = aligned messages per supersymbol, 2T * gain = 2B - ... - x*N*(KL-2).
    const long long B = K * (N + (L - 1) * (K - 1) * (N - L + 1) + 1);
    const long long den = N * (K * L - 2);
    if (q.x % 2 == 1) {
        return Rational(2 * B - 2 * N * (K * L + 1) + K * N * L, den);
    }
    return Rational(2 * B - 2 * N * (K + 1), den);
}

} // namespace dof
} // namespace hetnet
