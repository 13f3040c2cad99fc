#ifndef HETNET_DOF_HPP
#define HETNET_DOF_HPP

#include <cstdint>
#include <string>

// Exact degrees-of-freedom accounting for both schemes and their TDMA
// baselines. Everything here is integer combinatorics over a supersymbol:
// counts of interference-free messages divided by slot counts. Values are
// kept as exact rationals; comparisons never touch floating point.

namespace hetnet {
namespace dof {

// Not auto-reduced: a total of 8 messages over 2 slots prints as "8/2",
// matching the way the per-scheme tables are usually written. Arithmetic
// reduces intermediates only to avoid overflow; equality and ordering use
// cross-multiplication, so 8/2 == 4/1.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);
    explicit Rational(long long n) : num(n), den(1) {}

    double value() const { return static_cast<double>(num) / den; }
    std::string str() const;
    Rational reduced() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b);
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b);
    friend bool operator<=(const Rational& a, const Rational& b);
    friend bool operator>=(const Rational& a, const Rational& b);
};

struct DofQuery {
    int K = 2;
    int L = 1;
    int N = 2;
    int M_r = 2;
    int T = 2; // supersymbol slots of the TDMA comparison
    int x = 0; // slots the TDMA baseline grants the femtocells
};

struct DofReport {
    Rational macrocell;  // summed across macro users, per slot
    Rational femtocells; // summed across all femtocells, per slot
    Rational total;
};

// Hybrid scheme over T = L+1 slots: K*N macro + K*L*N femto messages per
// supersymbol.
DofReport dof_hybrid(const DofQuery& q);

// TDMA baseline in the hybrid setting: x of the T slots go to the
// femtocells (all K clusters reuse them), T-x to the macrocell.
DofReport dof_tdma_hybrid_comparison(const DofQuery& q);

// Exact hybrid-minus-TDMA total: N(K-1)(T-x)/T.
Rational hybrid_gain(const DofQuery& q);

// Blind scheme over T = K+1 slots. L == 1 uses the M_r-antenna femto
// construction ((K-1)(M_r-1)+1 messages per femto); 2 <= L <= min(3, N)
// uses the two-group construction ((L-1) wideband femtos carrying
// (K-1)(N-L+1) messages each plus one exclusive-slot message per cluster).
DofReport dof_blind_ia(const DofQuery& q);

// TDMA baseline in the blind setting; rows differ for L == 1 and for odd
// and even x when L >= 2.
DofReport dof_tdma_blind_comparison(const DofQuery& q);

// Crossover threshold: blind total exceeds the TDMA total exactly when
// x < threshold. For L >= 2 the row depends on the parity of q.x.
Rational blind_ia_gain_threshold(const DofQuery& q);

} // namespace dof
} // namespace hetnet

#endif
