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

#include "hyperteleport/density_matrix.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "hyperteleport/errors.h"

namespace hyperteleport {

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries) : n_(n_qubits), m_(std::move(entries)) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw SizeError("density matrix qubit count out of range: " + std::to_string(n_qubits));
    }
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    if (m_.rows() != d || m_.cols() != d) {
        throw ArgumentError("density matrix for " + std::to_string(n_qubits) + " qubits must be " +
                            std::to_string(d) + "x" + std::to_string(d));
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
        throw ArgumentError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - std::complex<double>(1.0, 0.0)) > kTolerance) {
        throw ArgumentError("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    return DensityMatrix(n_qubits, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DensityMatrix::max_abs_diff(const DensityMatrix& other) const {
    if (other.dim() != dim()) {
        throw ArgumentError("density matrix dimension mismatch");
    }
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

DensityMatrix project_psd(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
    Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
    const double total = vals.sum();
    if (total <= 0) {
        return DensityMatrix::maximally_mixed(rho.num_qubits());
    }
    vals /= total;
    Eigen::MatrixXcd m = es.eigenvectors() * vals.cast<std::complex<double>>().asDiagonal() *
                         es.eigenvectors().adjoint();
    m = (m + m.adjoint()) / 2.0;
    return DensityMatrix(rho.num_qubits(), std::move(m));
}

}  // namespace hyperteleport
