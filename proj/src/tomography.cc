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

#include "hyperteleport/tomography.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>

#include "hyperteleport/errors.h"
#include "hyperteleport/rng.h"

namespace hyperteleport {

namespace {

// Eigenvalues below this are treated as numerical noise when deciding
// whether clamping happened.
constexpr double kClampReportThreshold = 1e-12;
// Eigenvalues this close to zero are round-off; their square roots would
// otherwise leak ~1e-8 into the fidelity.
constexpr double kRoundoffEigenvalue = 1e-14;

double drop_roundoff(double ev) { return std::abs(ev) < kRoundoffEigenvalue ? 0.0 : ev; }

void check_tomography_size(int n) {
    if (n < 1 || n > kMaxTomographyQubits) {
        throw SizeError("tomography supports 1.." + std::to_string(kMaxTomographyQubits) + " qubits, got " +
                        std::to_string(n));
    }
}

std::vector<std::string> words_over(std::string_view alphabet, int n) {
    std::vector<std::string> out{""};
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> next;
        next.reserve(out.size() * alphabet.size());
        for (const auto& w : out) {
            for (char c : alphabet) next.push_back(w + c);
        }
        out = std::move(next);
    }
    return out;
}

Eigen::Matrix2cd single_pauli(char c) {
    using C = std::complex<double>;
    Eigen::Matrix2cd m;
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw ArgumentError(std::string("bad Pauli label character '") + c + "'");
    }
    return m;
}

Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const Eigen::VectorXd vals = es.eigenvalues().unaryExpr(&drop_roundoff).cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * vals.cast<std::complex<double>>().asDiagonal() * es.eigenvectors().adjoint();
}

void check_same_dims(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw ArgumentError("fidelity of matrices with different dimensions (" + std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()) + ")");
    }
}

}  // namespace

Circuit MeasurementSetting::rotation(std::span<const int> qubits) const {
    if (qubits.size() != bases.size()) {
        throw ArgumentError("measurement setting width does not match qubit list");
    }
    Circuit c;
    for (size_t i = 0; i < bases.size(); ++i) {
        switch (bases[i]) {
            case 'X': c.push_back(Gate::h(qubits[i])); break;
            case 'Y':
                c.push_back(Gate::sdg(qubits[i]));
                c.push_back(Gate::h(qubits[i]));
                break;
            case 'Z': break;
            default: throw ArgumentError("measurement basis must be X, Y or Z");
        }
    }
    return c;
}

std::vector<MeasurementSetting> measurement_plan(int n) {
    check_tomography_size(n);
    std::vector<MeasurementSetting> plan;
    for (auto& w : words_over("XYZ", n)) plan.push_back({std::move(w)});
    return plan;
}

MeasurementSetting canonical_setting(const std::string& label) {
    std::string bases = label;
    std::replace(bases.begin(), bases.end(), 'I', 'Z');
    return {bases};
}

std::vector<std::string> pauli_labels(int n) { return words_over("IXYZ", n); }

// ---------------------------------------------------------------------------

StokesTensor::StokesTensor(int n_qubits) : n_(n_qubits) {
    check_tomography_size(n_qubits);
    for (auto& l : pauli_labels(n_qubits)) values_.emplace(std::move(l), 0.0);
    values_[std::string(static_cast<size_t>(n_qubits), 'I')] = 1.0;
}

double StokesTensor::at(const std::string& label) const {
    auto it = values_.find(label);
    if (it == values_.end()) throw ArgumentError("unknown Pauli label '" + label + "'");
    return it->second;
}

void StokesTensor::set(const std::string& label, double value) {
    auto it = values_.find(label);
    if (it == values_.end()) throw ArgumentError("unknown Pauli label '" + label + "'");
    if (label.find_first_not_of('I') == std::string::npos) {
        if (value != 1.0) throw ArgumentError("the identity Stokes value is fixed at 1");
        return;
    }
    if (!(std::abs(value) <= 1.0 + 1e-12)) {
        throw ArgumentError("Stokes value for '" + label + "' outside [-1, 1]");
    }
    it->second = std::clamp(value, -1.0, 1.0);
}

DensityMatrix theoretical_density(const StateVector& state) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(state.dim()));
    for (uint64_t i = 0; i < state.dim(); ++i) v(static_cast<Eigen::Index>(i)) = state[i];
    return DensityMatrix(state.num_qubits(), v * v.adjoint());
}

StokesTensor stokes_from_histograms(const std::map<MeasurementSetting, ShotHistogram>& histograms) {
    if (histograms.empty()) throw InputError("no measurement histograms");
    const int n = static_cast<int>(histograms.begin()->first.bases.size());
    check_tomography_size(n);
    const uint64_t shots = histograms.begin()->second.shots;
    for (const auto& setting : measurement_plan(n)) {
        auto it = histograms.find(setting);
        if (it == histograms.end()) throw InputError("missing measurement setting " + setting.bases);
        const ShotHistogram& h = it->second;
        if (h.shots == 0) throw InputError("setting " + setting.bases + " has zero shots");
        if (h.shots != shots) throw InputError("settings have unequal shot counts");
        if (h.n_qubits != n) throw InputError("histogram width does not match setting " + setting.bases);
        try {
            h.validate();
        } catch (const InvariantError& e) {
            throw InputError(e.what());
        }
    }

    StokesTensor t(n);
    for (const auto& label : pauli_labels(n)) {
        if (label.find_first_not_of('I') == std::string::npos) continue;
        const ShotHistogram& h = histograms.at(canonical_setting(label));
        int64_t acc = 0;
        for (const auto& [bits, count] : h.counts) {
            int parity = 0;
            for (int q = 0; q < n; ++q) {
                if (label[static_cast<size_t>(q)] != 'I' && bits[static_cast<size_t>(q)] == '1') parity ^= 1;
            }
            acc += parity ? -static_cast<int64_t>(count) : static_cast<int64_t>(count);
        }
        t.set(label, static_cast<double>(acc) / static_cast<double>(h.shots));
    }
    return t;
}

StokesTensor stokes_exact(const StateVector& state) {
    StokesTensor t(state.num_qubits());
    for (const auto& label : pauli_labels(state.num_qubits())) {
        if (label.find_first_not_of('I') == std::string::npos) continue;
        t.set(label, expectation_pauli(state, label));
    }
    return t;
}

StokesTensor stokes_exact(const DensityMatrix& rho) {
    StokesTensor t(rho.num_qubits());
    for (const auto& label : pauli_labels(rho.num_qubits())) {
        if (label.find_first_not_of('I') == std::string::npos) continue;
        t.set(label, std::clamp((rho.matrix() * pauli_matrix(label)).trace().real(), -1.0, 1.0));
    }
    return t;
}

Eigen::MatrixXcd pauli_matrix(const std::string& label) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (char c : label) {
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(m, single_pauli(c)).eval();
        m = std::move(next);
    }
    return m;
}

DensityMatrix reconstruct_density(const StokesTensor& tensor) {
    const int n = tensor.num_qubits();
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& [label, value] : tensor.values()) {
        if (value != 0.0) rho += value * pauli_matrix(label);
    }
    rho /= static_cast<double>(d);
    return DensityMatrix(n, std::move(rho));
}

// ---------------------------------------------------------------------------

namespace {
// Floating-point overshoot past 1; genuine excess from non-physical rho_e is kept.
double trim_rounding(double f) { return f > 1.0 && f < 1.0 + 1e-9 ? 1.0 : f; }
}  // namespace

FidelityReport fidelity_general(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
    check_same_dims(rho_t, rho_e);
    FidelityReport r;
    r.min_eigenvalue_e = rho_e.min_eigenvalue();
    const Eigen::MatrixXcd s = hermitian_sqrt(rho_t.matrix());
    Eigen::MatrixXcd inner = s * rho_e.matrix() * s;
    inner = (inner + inner.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double ev = drop_roundoff(es.eigenvalues()(i));
        if (ev < -kClampReportThreshold) r.clamped = true;
        r.value += std::sqrt(std::max(ev, 0.0));
    }
    r.value = trim_rounding(r.value);
    return r;
}

FidelityReport fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
    check_same_dims(rho_t, rho_e);
    const double purity = (rho_t.matrix() * rho_t.matrix()).trace().real();
    if (std::abs(purity - 1.0) > DensityMatrix::kTolerance) {
        return fidelity_general(rho_t, rho_e);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_t.matrix());
    const Eigen::Index top = es.eigenvalues().size() - 1;  // ascending order
    const Eigen::VectorXcd psi = es.eigenvectors().col(top);
    const double overlap = (psi.adjoint() * rho_e.matrix() * psi)(0, 0).real();
    FidelityReport r;
    r.pure_shortcut = true;
    r.min_eigenvalue_e = rho_e.min_eigenvalue();
    r.clamped = overlap < -kClampReportThreshold;
    r.value = trim_rounding(std::sqrt(std::max(overlap, 0.0)));
    return r;
}

// ---------------------------------------------------------------------------

uint64_t setting_seed(uint64_t master_seed, uint64_t index) {
    return derive_seed(master_seed, streams::kTomographySetting, index);
}

DensityMatrix tomograph_with_runner(int n_qubits, const SettingRunner& runner, const TomographyOptions& opts) {
    const auto plan = measurement_plan(n_qubits);
    std::map<MeasurementSetting, ShotHistogram> histograms;
    for (size_t i = 0; i < plan.size(); ++i) {
        histograms.emplace(plan[i], runner(plan[i], opts.shots, setting_seed(opts.seed, i)));
    }
    DensityMatrix rho = reconstruct_density(stokes_from_histograms(histograms));
    return opts.project_psd ? project_psd(rho) : rho;
}

DensityMatrix tomograph_state(const StateVector& state, TomographyMode mode, const TomographyOptions& opts) {
    const int n = state.num_qubits();
    check_tomography_size(n);
    if (mode == TomographyMode::Exact) {
        DensityMatrix rho = reconstruct_density(stokes_exact(state));
        return opts.project_psd ? project_psd(rho) : rho;
    }
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    auto runner = [&](const MeasurementSetting& setting, uint64_t shots, uint64_t seed) {
        StateVector rotated = state;
        apply_circuit(rotated, setting.rotation(all));
        return sample_shots(rotated, shots, seed);
    };
    return tomograph_with_runner(n, runner, opts);
}

DensityMatrix tomograph_exact(const DensityMatrix& rho, bool psd) {
    DensityMatrix out = reconstruct_density(stokes_exact(rho));
    return psd ? project_psd(out) : out;
}

}  // namespace hyperteleport
