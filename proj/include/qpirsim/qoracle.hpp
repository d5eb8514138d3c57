// Copyright 2026 The qpirsim Authors
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

// A small dense state-vector simulator for prime-dimensional qudits. It is an
// independent check on the classical sum-box algebra, not a general-purpose
// simulator: everything is dense and states are capped at 3^6 amplitudes.
//
// Basis index convention: qudit 0 is the most significant digit.

#ifndef QPIRSIM_QORACLE_HPP
#define QPIRSIM_QORACLE_HPP

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "qpirsim/nsumbox.hpp"

namespace qpirsim::qoracle {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

constexpr double kTol = 1e-9;

struct PureState {
    int q = 2;
    int n = 0;
    CVec amps;

    // |i_0 ... i_{n-1}>.
    static PureState basis(int q, const std::vector<int>& digits);
    static PureState from_amplitudes(int q, int n, CVec amps);
    double norm() const { return amps.norm(); }
};

struct DensityMatrix {
    int q = 2;
    int n = 0;
    CMat rho;

    static DensityMatrix from_pure(const PureState& s);
    bool is_valid(double tol = 1e-10) const;
};

// |<a|b>| = 1 up to tolerance.
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = kTol);
bool is_unitary(const CMat& u, double tol = 1e-10);

// Single-qudit gates over prime q; arguments are reduced mod q.
CMat x_gate(int a, int q);
CMat z_gate(int b, int q);
CMat weyl(int a, int b, int q);
CMat qft(int q);
// |i, j> -> |i, i + j>, control first.
CMat cx(int q);
// W(s_1, s_{n+1}) (x) ... (x) W(s_n, s_{2n}) for s over the prime field.
CMat weyl_n(const gf::Vec& s);

PureState apply(const PureState& s, const CMat& u, const std::vector<int>& qudits);
PureState tensor(const PureState& a, const PureState& b);

// (W(i,j) (x) I) |beta_00>.
PureState bell_state(int i, int j, int q);

struct Branch {
    double prob = 0;
    std::vector<int> outcome;
    PureState post;  // renormalized
};

// All outcomes of measuring `qudits` in the computational basis.
std::vector<Branch> measure_branches(const PureState& s, const std::vector<int>& qudits);
// Undo the Bell preparation CX (QFT (x) I) on (a, b), then measure both.
// The branch outcome is the Bell label (i, j). The measured pair is left in
// the computational state |j, -i>.
std::vector<Branch> bell_measure_branches(const PureState& s, int a, int b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

// Protocols on qubits unless q is given.
std::pair<int, int> superdense(int a1, int a2, int q = 2);
// The received state for each of the q^2 measurement branches, after the
// W correction. `psi` is a single-qudit state.
std::vector<PureState> teleport(const PureState& psi);
// Tx1 holds (a1, a2), Tx2 holds (b1, b2); returns (a1 + b1, a2 + b2).
std::pair<int, int> two_sum_transmit(std::pair<int, int> a, std::pair<int, int> b, int q = 2);

// Phase-corrected generators c_k W(g_k) whose joint +1 eigenspace is the
// returned state. Throws NoPhaseAssignmentFound.
struct Stabilizer {
    PureState state;
    std::vector<CMat> generators;
};
Stabilizer stabilizer_state(const symplectic::SelfOrthMat& g);

// Physical run of a maximal box: prepare the stabilizer state of box.g, let
// transmitter n apply W(x_n, x_{N+n}), read the syndrome of each generator,
// and decode y = (G J^T H^T)^{-1} s.
gf::Vec simulate_box(const nsumbox::SumBox& box, const gf::Vec& x);

// Circuit-level protocols checked against their classical contracts.
struct SuiteCheck {
    std::string name;
    size_t matched = 0, total = 0;
    bool passed() const { return matched == total; }
};
std::vector<SuiteCheck> self_check();

}  // namespace qpirsim::qoracle

#endif  // QPIRSIM_QORACLE_HPP
