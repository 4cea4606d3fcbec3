#pragma once

#include <span>
#include <vector>

#include "fitting.hpp"
#include "types.hpp"

namespace strmat {

// Column-wise unitary DFT (sign +1) of an eigenvector block.
CMatrix fourier_eigenvectors(const CMatrix& vectors);

// Moment accumulator for <sum_p |psi_p|^{2q}> at one matrix dimension.
// Components with |psi_p|^2 below drop_tol are excluded for q < 0 (divergence
// guard); excluded_fraction reports how much that removed.
struct MomentAccumulator {
    std::vector<double> q;
    std::vector<double> sum;      // running sum over samples, per q
    std::vector<double> sum_sq;   // for standard errors
    double entropy_sum = 0.0;     // sum over samples of sum_p |psi|^2 ln |psi|^2
    double entropy_sum_sq = 0.0;
    std::size_t samples = 0;
    std::size_t excluded = 0;
    std::size_t component_count = 0;
    double drop_tol = 1e-14;

    explicit MomentAccumulator(std::vector<double> q_grid);
    void add_vector(std::span<const cplx> psi_hat);
    // fold another accumulator in; callers merge in realization order so the
    // totals do not depend on the worker count
    void merge(const MomentAccumulator& other);
};

struct MomentTable {
    std::size_t dim = 0;
    std::vector<double> q;
    std::vector<double> moment;    // <sum_p |psi_p|^{2q}>
    std::vector<double> moment_se;
    double entropy = 0.0;          // <sum_p |psi_p|^2 ln |psi_p|^2>
    double entropy_se = 0.0;
    std::size_t samples = 0;
    double excluded_fraction = 0.0;
};

MomentTable finalize_moments(const MomentAccumulator& acc, std::size_t dim);

// Default analysis grid: -2..4 step 0.25.  q = 1 is kept for the
// normalization check; D_1 itself comes from the entropy route.
std::vector<double> default_q_grid();

struct ScalingExponents {
    std::vector<double> q;
    std::vector<double> tau;       // moment ~ N^{-tau(q)}
    std::vector<double> tau_se;
    std::vector<double> dq;        // D_q = tau/(q-1); entropy route at q = 1
    std::vector<double> dq_se;
    std::vector<double> delta;     // anomalous exponents (D_q - 1)(q - 1)
    double d1 = 0.0;
    double d1_se = 0.0;
};

// Regression of ln<moment> against ln N over the dimension ladder.
ScalingExponents scaling_exponents(const std::vector<MomentTable>& tables);

struct SymmetryRow {
    double q;
    double delta_q;
    double delta_1mq;
    double difference;
};

// Tabulates Delta_q - Delta_{1-q} for every q whose partner lies on the grid.
std::vector<SymmetryRow> symmetry_check(const ScalingExponents& se);

// Fourier representation of a real Hankel matrix built directly from the
// closed form: diagonal (m+n = 0 mod N) part xi, off-diagonal part driven by
// eta_n / (1 - omega) resonance factors.  h holds h_2..h_{2N}.
HermitianMatrix hankel_fourier_matrix(std::span<const double> h, std::size_t n);

}  // namespace strmat
