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

/**
 * @file
 * Linear-inversion state tomography from Pauli expectation values, and the
 * Uhlmann fidelity used to score the reconstructions.
 */

#ifndef HYPERTELEPORT_TOMOGRAPHY_H
#define HYPERTELEPORT_TOMOGRAPHY_H

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hyperteleport/density_matrix.h"
#include "hyperteleport/statevec.h"

namespace hyperteleport {

inline constexpr int kMaxTomographyQubits = 4;

/// Per-qubit measurement bases, e.g. "XZ". Bit 0 of an outcome means the +1
/// eigenvalue of that qubit's basis.
struct MeasurementSetting {
    std::string bases;

    /// Gates rotating each basis onto Z for the listed register qubits
    /// (qubits[i] is measured in bases[i]). X: H. Y: S^dagger then H. Z: none.
    Circuit rotation(std::span<const int> qubits) const;

    friend auto operator<=>(const MeasurementSetting&, const MeasurementSetting&) = default;
};

/// All 3^n settings in lexicographic order over {X, Y, Z}.
/// Throws SizeError unless 1 <= n <= kMaxTomographyQubits.
std::vector<MeasurementSetting> measurement_plan(int n);

/// The setting that measures a Pauli label: I positions are read in Z.
MeasurementSetting canonical_setting(const std::string& label);

/// Expectation values of every n-qubit Pauli string over {I, X, Y, Z}.
class StokesTensor {
   public:
    /// Starts at the maximally mixed tensor (identity 1, everything else 0).
    explicit StokesTensor(int n_qubits);

    int num_qubits() const { return n_; }
    const std::map<std::string, double>& values() const { return values_; }

    double at(const std::string& label) const;

    /// Throws ArgumentError on an unknown label, an attempt to change the
    /// identity label, or a value outside [-1, 1] (beyond 1e-12).
    void set(const std::string& label, double value);

    friend bool operator==(const StokesTensor&, const StokesTensor&) = default;

   private:
    int n_;
    std::map<std::string, double> values_;
};

/// All 4^n labels in lexicographic order over {I, X, Y, Z}.
std::vector<std::string> pauli_labels(int n);

/// |psi><psi|.
DensityMatrix theoretical_density(const StateVector& state);

/// Averages prod_{i: L_i != I} (-1)^{bit_i} over the canonical setting's
/// shots for every label L. Throws InputError when a setting is missing,
/// a histogram has zero shots or the wrong width, or shot counts differ.
StokesTensor stokes_from_histograms(const std::map<MeasurementSetting, ShotHistogram>& histograms);

/// Exact expectation values, no sampling.
StokesTensor stokes_exact(const StateVector& state);
StokesTensor stokes_exact(const DensityMatrix& rho);

/// 2^-n sum_L T_L sigma_L.
DensityMatrix reconstruct_density(const StokesTensor& tensor);

/// Kronecker product of Pauli matrices for a label.
Eigen::MatrixXcd pauli_matrix(const std::string& label);

struct FidelityReport {
    double value = 0;
    /// True when rho_t was rank 1 and F = sqrt(<psi|rho_e|psi>) was used.
    bool pure_shortcut = false;
    /// True when a negative eigenvalue (or a negative <psi|rho_e|psi>) was
    /// clamped to zero before the square root.
    bool clamped = false;
    /// Smallest eigenvalue of rho_e, for PSD diagnostics.
    double min_eigenvalue_e = 0;

    friend bool operator==(const FidelityReport&, const FidelityReport&) = default;
};

/// F = Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)). Uses the rank-1 shortcut when
/// rho_t is pure within 1e-10. Throws ArgumentError on a dimension mismatch.
FidelityReport fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e);

/// The eigendecomposition route only, never the shortcut.
FidelityReport fidelity_general(const DensityMatrix& rho_t, const DensityMatrix& rho_e);

enum class TomographyMode { Exact, Sampled };

/// Produces the histogram for one setting; `seed` is already derived per
/// setting. Keys must cover exactly the tomographed qubits.
using SettingRunner = std::function<ShotHistogram(const MeasurementSetting&, uint64_t shots, uint64_t seed)>;

/// Seed handed to the runner for setting number `index` of the plan.
uint64_t setting_seed(uint64_t master_seed, uint64_t index);

struct TomographyOptions {
    uint64_t shots = 8192;
    uint64_t seed = 0;
    /// Clip negative eigenvalues of the reconstruction.
    bool project_psd = false;
};

/// Full pipeline on a pure state. Exact mode evaluates the Pauli
/// expectations directly; sampled mode rotates and samples each setting.
DensityMatrix tomograph_state(const StateVector& state, TomographyMode mode, const TomographyOptions& opts = {});

/// Exact mode on a mixed state.
DensityMatrix tomograph_exact(const DensityMatrix& rho, bool psd = false);

/// Sampled pipeline with an arbitrary per-setting runner.
DensityMatrix tomograph_with_runner(int n_qubits, const SettingRunner& runner, const TomographyOptions& opts = {});

}  // namespace hyperteleport

#endif
