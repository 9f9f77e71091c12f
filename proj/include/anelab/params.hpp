#pragma once

#include <cmath>
#include <stdexcept>

namespace anelab {

// Scalar constants of the barotropic model p(ρ) = a ρ^γ with entropy
// parameter κ and Mach/Froude parameter ε.
struct PhysParams {
  double a = 1.0;        // pressure coefficient
  double gamma = 2.0;    // adiabatic exponent
  double mu = 0.0;       // viscosity
  double kappa = 0.25;   // entropy parameter in (0,1)
  double epsilon = 1.0;  // Mach/Froude parameter

  double beta() const { return std::sqrt(kappa / (1.0 - kappa)); }

  double pressure(double rho) const { return a * std::pow(rho, gamma); }
  double dpressure(double rho) const { return a * gamma * std::pow(rho, gamma - 1.0); }

  // Pressure potential P(ρ) = a ρ^γ / (γ−1) and its derivatives.
  double potential(double rho) const {
    return a / (gamma - 1.0) * std::pow(rho, gamma);
  }
  double dpotential(double rho) const {
    return a * gamma / (gamma - 1.0) * std::pow(rho, gamma - 1.0);
  }
  double ddpotential(double rho) const { return a * gamma * std::pow(rho, gamma - 2.0); }
};

inline PhysParams make_params(double a, double gamma, double mu, double kappa,
                              double epsilon) {
  if (!(a > 0.0)) throw std::invalid_argument("pressure coefficient a must be positive");
  if (!(gamma > 1.0)) throw std::invalid_argument("adiabatic exponent gamma must exceed 1");
  if (!(mu > 0.0)) throw std::invalid_argument("viscosity mu must be positive");
  if (!(kappa > 0.0 && kappa < 1.0))
    throw std::invalid_argument("entropy parameter kappa must lie in (0,1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  return PhysParams{a, gamma, mu, kappa, epsilon};
}

}  // namespace anelab
