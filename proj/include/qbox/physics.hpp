#pragma once

#include "qbox/qcore.hpp"

namespace qbox {

struct PhysicalConfig {
  double hbar = 1.0;
  double mass = 1.0;
  double length = 1.0;  // box length L
  Deformation deformation{1.5};

  PhysicalConfig() = default;
  PhysicalConfig(Deformation d, double hbar_, double mass_, double length_);

  const Deformation& d() const noexcept { return deformation; }
  // m_q = ((q+1)/(2q))^2 m
  double m_q() const noexcept;
  // (q+1)/(2q), the factor in the hermitian momentum
  double momentum_factor() const noexcept;
};

}  // namespace qbox
