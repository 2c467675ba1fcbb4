#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcx/core.hpp"
#include "tcx/linalg.hpp"

namespace tcx {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// One localized configuration: photon count plus the level (0, 1, 2) of every emitter.
struct Configuration {
    int photons = 0;
    std::vector<int> levels;

    int excitations() const;
    std::uint64_t key() const;
    static Configuration from_key(std::uint64_t key, std::size_t n);
};

class FockBasis {
public:
    // manifold 0, 1 or 2; `with_double` adds the |2_i> members (absent in TC)
    FockBasis(int manifold, std::uint64_t n, bool with_double);

    int manifold() const { return manifold_; }
    std::uint64_t n() const { return n_; }
    bool with_double() const { return with_double_; }
    std::size_t size() const { return members_.size(); }
    const Configuration& member(std::size_t i) const { return members_[i]; }
    std::string label(std::size_t i) const;
    // -1 when absent
    long index(const Configuration& c) const;

private:
    int manifold_;
    std::uint64_t n_;
    bool with_double_;
    std::vector<Configuration> members_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

struct FullHamiltonian {
    FockBasis basis;
    Matrix matrix;
};

// N <= 10, manifold 1 or 2.
FullHamiltonian build_full(const SystemParams& p, int manifold);

enum class CollectiveOp {
    JPlus0, JMinus0, JZero0,   // levels 0 <-> 1
    JPlus1, JMinus1, JZero1,   // levels 1 <-> 2
    JSquared0,
    Hypercharge,
    DipoleRaise, DipoleLower,  // sum_i (|1><0| + r |2><1|), r = mu12 / mu10
    PhotonCreate, PhotonAnnihilate,
};
std::string op_name(CollectiveOp op);

struct OperatorOptions {
    double mu12 = 1.4142135623730951;  // sqrt(2) (1 + gamma) in units of mu10
};

// Exact action in the localized basis. Throws ContractError naming the operator when the
// image has weight outside `to`.
CVector apply_collective_operator(CollectiveOp op, const CVector& v, const FockBasis& from, const FockBasis& to,
                                  const OperatorOptions& opt = {});
CVector apply_collective_operator(CollectiveOp op, const CVector& v, const FockBasis& basis,
                                  const OperatorOptions& opt = {});

CVector apply_full(const FullHamiltonian& h, const CVector& v);

struct Cluster {
    double value = 0.0;   // mean
    double count = 0.0;
};

// Groups ascending values whose neighbour gap is <= tol.
std::vector<Cluster> cluster_values(const std::vector<double>& sorted, double tol);

struct ModelSpec {
    enum class Kind { TC, HO, MorseFixed, MorseRandom } kind = Kind::HO;
    double chi = 0.0;
    std::string name() const;
};

struct CertificationReport {
    SystemParams params;
    bool pass = false;
    double max_deviation = 0.0;     // over both manifolds
    std::size_t full_dim_m2 = 0;
    double reduced_count_m2 = 0.0;  // summed multiplicities
    std::vector<Cluster> clusters_full_m2;
    std::vector<Cluster> clusters_reduced_m2;
    double mult_a = 1.0, mult_b = 0.0, mult_c = 0.0;  // multiplicities used by the reduced path
    std::string failure;            // empty on pass
};

// N <= 8. Compares manifolds 1 and 2.
CertificationReport certify(const SystemParams& p);

struct CertificationRun {
    std::uint64_t n = 1;
    ModelSpec model;
    int draw = 0;
    int redraws = 0;
    CertificationReport report;
};

// Seeded random draws (detuning in [-0.3, 0.3], sqrt(N) g in [0.01, 0.2], omega_10 = 1) with rejection
// of near-coincident levels. Result order does not depend on `parallel`.
std::vector<CertificationRun> certify_grid(std::uint64_t n_max, const std::vector<ModelSpec>& models, int draws,
                                           std::uint64_t seed, bool parallel);

}  // namespace tcx
