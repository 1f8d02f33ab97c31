#pragma once

namespace mubtomo {

// Central numerical tolerances. All thresholds used by the library live
// here so that every module agrees on what "Hermitian", "unit trace" or
// "positive semidefinite" means in floating point.
struct Tolerances {
  double hermiticity = 1e-12;        // max |a(j,k) - conj(a(k,j))|
  double unit_trace = 1e-12;         // |tr - 1|
  double psd_floor = -1e-10;         // smallest admissible eigenvalue
  double jacobi_offdiag = 1e-13;     // eigensolver sweep stop
  double eigen_reconstruction = 1e-10;  // relative Frobenius defect
  double degeneracy = 1e-10;         // eigenvalue tie window
  double mub_verify = 1e-12;         // default basis-set verification
  double table_row = 1e-12;          // probability row sum / range slack
  double reconstruct_psd = -1e-8;    // inconsistent-table threshold
  double bound_saturation = 1e-6;    // |lambda + (M-1)/d| classification
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace mubtomo
