#pragma once

// Physical configuration, mode bookkeeping, and evaluation of the cavity
// wavefunctions: static-well Klein-Gordon eigenstates, moving-wall solutions
// built on imaginary-order Bessel functions, and the Schroedinger limit.
// All states carry analytic time and space derivatives.

#include <complex>

#include "kgc/bessel_im.hpp"
#include "kgc/numerics.hpp"

namespace kgc {

struct PhysicalConfig {
    // Defaults reproduce the reference computation: mass, length and wall
    // speed of the worked example, with the rounded constants it evidently
    // used. Override c and hbar for CODATA values.
    double mass = 1e-30;   // kg
    double L0 = 1e-6;      // m, initial cavity length
    double beta = 0.01;    // wall speed / c, in (0, 1)
    double c = 3e8;        // m/s
    double hbar = 1.05e-34;  // J s

    void validate() const;
    double lambda_c() const { return hbar / (mass * c); }  // Compton wavelength
    double wall_speed() const { return beta * c; }
    double rest_energy() const { return mass * c * c; }
};

enum class Branch { particle, antiparticle };  // e^{-iEt/hbar} vs e^{+iEt/hbar}

struct ModeData {
    int n = 1;
    Branch branch = Branch::particle;
    double k_n = 0.0;  // 2 n pi / ln((1+beta)/(1-beta))
    double p_n = 0.0;  // n pi hbar / L0
    double E_n = 0.0;  // sqrt(m^2 c^4 + p_n^2 c^2)

    static ModeData make(const PhysicalConfig& cfg, int n, Branch branch);
};

// One space-time sample of a wavefunction: value and analytic derivatives.
struct ComplexSample {
    std::complex<double> value;
    std::complex<double> dt;  // per second
    std::complex<double> dx;  // per meter
    double t = 0.0;
    double x = 0.0;
};

// L(t) = L0 + beta c t
double wall_position(const PhysicalConfig& cfg, double t);

// z = sqrt(L^2 - beta^2 x^2) / (lambda_C beta)
double z_arg(const PhysicalConfig& cfg, double t, double x);
dd z_arg_dd(const PhysicalConfig& cfg, double t, double x);

// phi_n = (k_n/2) ln((L + beta x)/(L - beta x))
double phase_phi(const PhysicalConfig& cfg, const ModeData& mode, double t, double x);

// Static-well eigenstate, KG norm +1 (particle) / -1 (antiparticle).
ComplexSample phi_static(const PhysicalConfig& cfg, const ModeData& mode, double t, double x);

// Group velocity u = p_n c^2 / E_n of the plane wave with momentum p_n.
double mode_velocity(const PhysicalConfig& cfg, const ModeData& mode);

// Normalization constant C_{+-,n} fixed by requiring KG self-norm +-1
// (numerical quadrature; memoized per configuration and mode).
double normalization_constant(const PhysicalConfig& cfg, const ModeData& mode,
                              const bessel::AsymptoticPolicy& policy);

// Moving-wall solution Psi_{+-,n}(t, x) with analytic derivatives.
ComplexSample psi_moving(const PhysicalConfig& cfg, const ModeData& mode, double t, double x,
                         const bessel::AsymptoticPolicy& policy);

// Schroedinger solution of the expanding well (Eq. of the non-relativistic
// limit), unit L2 norm.
ComplexSample schrodinger_moving(const PhysicalConfig& cfg, int n, double t, double x);

// Difference (radians) between the Bessel phase z - (4 k_n^2 + 1)/(8z) with
// its (t,x) = (0,0) constant removed and the non-relativistic target phase
// m c^2 t/hbar - m v x^2/(2 hbar L) + hbar n^2 pi^2 t/(2 m L0 L).
double nonrel_phase_check(const PhysicalConfig& cfg, const ModeData& mode, double t, double x,
                          const bessel::AsymptoticPolicy& policy);

// Throws RegimeError unless beta << 1, z >> 1 and k_1^2/z << 1 hold.
void require_nonrel_regime(const PhysicalConfig& cfg);

// Batch evaluator for one moving mode: caches the normalization constant and
// the per-configuration derived scales. Pure and thread-safe after
// construction.
class MovingStateEvaluator {
  public:
    MovingStateEvaluator(const PhysicalConfig& cfg, const ModeData& mode,
                         const bessel::AsymptoticPolicy& policy);

    ComplexSample operator()(double t, double x) const;
    double norm_constant() const { return C_; }
    const ModeData& mode() const { return mode_; }

  private:
    PhysicalConfig cfg_;
    ModeData mode_;
    bessel::AsymptoticPolicy policy_;
    double C_;
};

}  // namespace kgc
