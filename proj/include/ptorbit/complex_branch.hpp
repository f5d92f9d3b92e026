#ifndef PTORBIT_COMPLEX_BRANCH_HPP
#define PTORBIT_COMPLEX_BRANCH_HPP

#include <complex>
#include <stdexcept>

namespace ptorbit {

using Complex = std::complex<double>;

/// Complex position/momentum pair (units hbar = 2m = 1, time real).
struct PhasePoint {
    Complex x{};
    Complex p{};
};

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Thrown when a branch-tracked step is too coarse to resolve the
/// nearest branch unambiguously. Callers refine the grid and retry.
class BranchStepError : public std::runtime_error {
  public:
    BranchStepError(double jump, double spacing)
        : std::runtime_error("branch tracking step too large: jump " +
                             std::to_string(jump) + " exceeds half spacing " +
                             std::to_string(spacing / 2)),
          jump_(jump), spacing_(spacing) {}
    double jump() const { return jump_; }
    double spacing() const { return spacing_; }

  private:
    double jump_;
    double spacing_;
};

/// Principal branch of the inverse hyperbolic sine,
/// log(u + sqrt(u^2 + 1)) with principal sqrt and log.
/// Imaginary part lies in [-pi/2, pi/2].
Complex asinh_principal(Complex u);

/// State carried between consecutive branch-tracked asinh evaluations.
struct BranchContext {
    Complex previous_value{}; // last accepted w with sinh(w) = u
    int branch_family = 0;    // index n of the last accepted candidate
};

/// Branch-tracked asinh: among the candidates
///   w_n = (-1)^n * asinh_principal(u) + i*n*pi,  n in [-window, window],
/// returns the one closest to ctx.previous_value and updates ctx.
/// Throws BranchStepError if the nearest candidate is farther than half
/// the minimal inter-candidate spacing.
Complex asinh_tracked(Complex u, BranchContext& ctx, int window = 8);

} // namespace ptorbit

#endif
