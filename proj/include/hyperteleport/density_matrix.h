// Copyright 2026 The hyperteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERTELEPORT_DENSITY_MATRIX_H
#define HYPERTELEPORT_DENSITY_MATRIX_H

#include <Eigen/Dense>

namespace hyperteleport {

/// Hermitian, unit-trace 2^n x 2^n matrix.
///
/// Positive semidefiniteness is NOT enforced: linear-inversion tomography
/// produces matrices with small negative eigenvalues under finite sampling,
/// and those are kept as-is (see min_eigenvalue()).
class DensityMatrix {
   public:
    static constexpr double kTolerance = 1e-10;

    /// Throws ArgumentError when the matrix is not 2^n square, not Hermitian
    /// within kTolerance, or its trace differs from 1 by more than kTolerance.
    DensityMatrix(int n_qubits, Eigen::MatrixXcd entries);

    static DensityMatrix maximally_mixed(int n_qubits);

    int num_qubits() const { return n_; }
    Eigen::Index dim() const { return m_.rows(); }
    const Eigen::MatrixXcd& matrix() const { return m_; }
    std::complex<double> operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    /// Smallest eigenvalue. Negative values indicate an unphysical estimate.
    double min_eigenvalue() const;

    /// Largest |entry difference|.
    double max_abs_diff(const DensityMatrix& other) const;

    friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) {
        return a.n_ == b.n_ && a.m_ == b.m_;
    }

   private:
    int n_;
    Eigen::MatrixXcd m_;
};

/// Clip negative eigenvalues to zero and renormalize the trace.
DensityMatrix project_psd(const DensityMatrix& rho);

}  // namespace hyperteleport

#endif
