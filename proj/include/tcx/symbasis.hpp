#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcx/oracle.hpp"

namespace tcx {

enum class Flavor { Fourier, SchurWeyl };
std::string flavor_name(Flavor f);

using Pair = std::pair<int, int>;  // 1-based, first < second

// All pairs (m < n) in lexicographic order.
std::vector<Pair> emitter_pairs(int n);

struct CoefficientSet1 {
    int n = 0;
    int k = 0;
    Flavor flavor = Flavor::SchurWeyl;
    CVector c;  // c[i] is emitter i+1
};

struct CoefficientSet2B {
    int n = 0;
    int k = 0;
    Flavor flavor = Flavor::SchurWeyl;
    std::vector<Pair> pairs;
    CVector c;                        // closed form
    double constructive_deviation = 0.0;  // max |c - (c_m + c_n)/sqrt(N-2)|
};

struct CoefficientSet2C {
    int n = 0;
    int k = 0;
    int l = 0;
    Flavor flavor = Flavor::SchurWeyl;
    std::vector<Pair> pairs;
    CVector c;
};

CoefficientSet1 coeffs1(int n, int k, Flavor flavor);
CoefficientSet2B coeffs2B(int n, int k, Flavor flavor);
// Fourier only at N = 4, with (k, l) in {(2, 4), (3, 4)} naming the two members in their displayed order.
CoefficientSet2C coeffs2C(int n, int k, int l, Flavor flavor);

// (k, l) labels of the C members: 2 <= k < l, 4 <= l <= N.
std::vector<Pair> c_labels(int n);

// A symmetry-adapted state of manifold 0, 1 or 2.
struct SymState {
    enum class Kind { Ground, Photon1, SingleA, SingleB, Photon2, PhotonSingleA, PhotonSingleB,
                      PairA, PairB, PairC, DoubleA, DoubleB } kind = Kind::Ground;
    int k = 2;
    int l = 4;
    Flavor flavor = Flavor::SchurWeyl;

    int manifold() const;
    std::string name() const;
};

// Explicit vector over the localized basis (which must contain |2_i> for DoubleA/DoubleB).
CVector embed(const SymState& s, const FockBasis& basis);

struct SuLabelReport {
    std::string state;
    double j_j1 = 0.0, m = 0.0, y = 0.0;                          // measured
    double expected_j_j1 = 0.0, expected_m = 0.0, expected_y = 0.0;
    double residual = 0.0;  // largest eigen-residual norm of the three operators
    bool pass = false;
};

// Molecular states only (no photon kinds). N <= 8.
SuLabelReport su_label_check(int n, const SymState& s);

}  // namespace tcx
