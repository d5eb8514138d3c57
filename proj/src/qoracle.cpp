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

#include "qpirsim/qoracle.hpp"

#include <cmath>
#include <numbers>

namespace qpirsim::qoracle {

namespace {

constexpr long kMaxDim = 729;  // 3^6

int mod(long a, int q) { return static_cast<int>(((a % q) + q) % q); }

Complex omega(int q, long k) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(mod(k, q)) / q;
    return {std::cos(t), std::sin(t)};
}

long ipow(int q, int n) {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= q;
    return r;
}

void check_dim(int q, int n) {
    if (!gf::is_prime(q)) fail(Errc::NotPrime, "oracle qudits need prime dimension");
    if (n < 0 || ipow(q, n) > kMaxDim) fail(Errc::OutOfRange, "oracle state larger than 3^6");
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

int digit(long idx, int q, int n, int pos) { return static_cast<int>(idx / ipow(q, n - 1 - pos) % q); }

// Orthonormal basis of the column space of m.
CMat range_basis(const CMat& m) {
    Eigen::ColPivHouseholderQR<CMat> qr(m);
    qr.setThreshold(1e-9);
    const auto r = qr.rank();
    CMat q = qr.householderQ();
    return q.leftCols(r);
}

}  // namespace

PureState PureState::basis(int q, const std::vector<int>& digits) {
    const int n = static_cast<int>(digits.size());
    check_dim(q, n);
    long idx = 0;
    for (int d : digits) idx = idx * q + mod(d, q);
    CVec a = CVec::Zero(ipow(q, n));
    a(idx) = 1;
    return {q, n, a};
}

PureState PureState::from_amplitudes(int q, int n, CVec amps) {
    check_dim(q, n);
    if (amps.size() != ipow(q, n)) fail(Errc::DimensionMismatch, "amplitude count is not q^n");
    const double nrm = amps.norm();
    if (nrm < 1e-12) fail(Errc::BadParameters, "zero state vector");
    return {q, n, amps / nrm};
}

DensityMatrix DensityMatrix::from_pure(const PureState& s) { return {s.q, s.n, s.amps * s.amps.adjoint()}; }

bool DensityMatrix::is_valid(double tol) const {
    if ((rho - rho.adjoint()).norm() > tol) return false;
    if (std::abs(rho.trace() - Complex(1, 0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<CMat> es(rho);
    return es.eigenvalues().minCoeff() >= -tol;
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
    if (a.q != b.q || a.n != b.n) return false;
    return std::abs(std::abs(a.amps.dot(b.amps)) - 1.0) < tol;
}

bool is_unitary(const CMat& u, double tol) {
    return u.rows() == u.cols() && (u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm() < tol;
}

CMat x_gate(int a, int q) {
    CMat m = CMat::Zero(q, q);
    for (int i = 0; i < q; ++i) m(mod(i + a, q), i) = 1;
    return m;
}

CMat z_gate(int b, int q) {
    CMat m = CMat::Zero(q, q);
    for (int i = 0; i < q; ++i) m(i, i) = omega(q, static_cast<long>(b) * i);
    return m;
}

CMat weyl(int a, int b, int q) { return x_gate(a, q) * z_gate(b, q); }

CMat qft(int q) {
    CMat m(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m(i, j) = omega(q, static_cast<long>(i) * j) / std::sqrt(static_cast<double>(q));
    return m;
}

CMat cx(int q) {
    CMat m = CMat::Zero(q * q, q * q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m(i * q + mod(i + j, q), i * q + j) = 1;
    return m;
}

CMat weyl_n(const gf::Vec& s) {
    if (s.empty() || s.size() % 2) fail(Errc::DimensionMismatch, "Weyl label needs even length");
    const gf::Field f = s[0].field();
    if (!f.is_prime_field()) fail(Errc::BadParameters, "oracle Weyl operators need a prime field");
    const size_t n = s.size() / 2;
    CMat out = CMat::Identity(1, 1);
    for (size_t i = 0; i < n; ++i)
        out = kron(out, weyl(static_cast<int>(s[i].code()), static_cast<int>(s[n + i].code()), f.p()));
    return out;
}

PureState apply(const PureState& s, const CMat& u, const std::vector<int>& qudits) {
    const int q = s.q, n = s.n, k = static_cast<int>(qudits.size());
    const long sub = ipow(q, k);
    if (u.rows() != sub || u.cols() != sub) fail(Errc::DimensionMismatch, "gate size does not match qudit count");
    std::vector<long> stride;
    for (int t : qudits) {
        if (t < 0 || t >= n) fail(Errc::OutOfRange, "qudit index out of range");
        stride.push_back(ipow(q, n - 1 - t));
    }
    // Offsets of the sub-basis states relative to a base index.
    std::vector<long> offset(sub, 0);
    for (long c = 0; c < sub; ++c) {
        long rem = c;
        for (int i = k - 1; i >= 0; --i) {
            offset[c] += (rem % q) * stride[i];
            rem /= q;
        }
    }
    PureState out = s;
    CVec buf(sub);
    for (long base = 0; base < s.amps.size(); ++base) {
        bool is_base = true;
        for (int t : qudits) is_base = is_base && digit(base, q, n, t) == 0;
        if (!is_base) continue;
        for (long c = 0; c < sub; ++c) buf(c) = s.amps(base + offset[c]);
        CVec res = u * buf;
        for (long c = 0; c < sub; ++c) out.amps(base + offset[c]) = res(c);
    }
    return out;
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.q != b.q) fail(Errc::DimensionMismatch, "tensor of different qudit dimensions");
    check_dim(a.q, a.n + b.n);
    CVec amps(a.amps.size() * b.amps.size());
    for (Eigen::Index i = 0; i < a.amps.size(); ++i) amps.segment(i * b.amps.size(), b.amps.size()) = a.amps(i) * b.amps;
    return {a.q, a.n + b.n, amps};
}

PureState bell_state(int i, int j, int q) {
    check_dim(q, 2);
    CVec amps = CVec::Zero(q * q);
    for (int k = 0; k < q; ++k) amps(k * q + k) = 1.0 / std::sqrt(static_cast<double>(q));
    return apply({q, 2, amps}, weyl(i, j, q), {0});
}

std::vector<Branch> measure_branches(const PureState& s, const std::vector<int>& qudits) {
    const int q = s.q, n = s.n, k = static_cast<int>(qudits.size());
    std::vector<Branch> out;
    for (long c = 0; c < ipow(q, k); ++c) {
        std::vector<int> outcome(k);
        long rem = c;
        for (int i = k - 1; i >= 0; --i) {
            outcome[i] = static_cast<int>(rem % q);
            rem /= q;
        }
        CVec proj = CVec::Zero(s.amps.size());
        for (long idx = 0; idx < s.amps.size(); ++idx) {
            bool match = true;
            for (int i = 0; i < k && match; ++i) match = digit(idx, q, n, qudits[i]) == outcome[i];
            if (match) proj(idx) = s.amps(idx);
        }
        const double p = proj.squaredNorm();
        if (p < 1e-12) continue;
        out.push_back({p, outcome, {q, n, proj / std::sqrt(p)}});
    }
    return out;
}

std::vector<Branch> bell_measure_branches(const PureState& s, int a, int b) {
    const int q = s.q;
    CMat prep = cx(q) * kron(qft(q), CMat::Identity(q, q));
    auto branches = measure_branches(apply(s, prep.adjoint(), {a, b}), {a, b});
    for (auto& br : branches) br.outcome = {mod(-br.outcome[1], q), br.outcome[0]};
    return branches;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const int q = rho.q, n = rho.n;
    std::vector<int> traced;
    for (int t = 0; t < n; ++t) {
        bool kept = false;
        for (int k : keep) {
            if (k < 0 || k >= n) fail(Errc::OutOfRange, "qudit index out of range");
            kept = kept || k == t;
        }
        if (!kept) traced.push_back(t);
    }
    const int nk = static_cast<int>(keep.size());
    const long dk = ipow(q, nk);
    auto reduced_index = [&](long idx, const std::vector<int>& which) {
        long r = 0;
        for (int t : which) r = r * q + digit(idx, q, n, t);
        return r;
    };
    CMat out = CMat::Zero(dk, dk);
    for (long i = 0; i < rho.rho.rows(); ++i)
        for (long j = 0; j < rho.rho.cols(); ++j)
            if (reduced_index(i, traced) == reduced_index(j, traced))
                out(reduced_index(i, keep), reduced_index(j, keep)) += rho.rho(i, j);
    return {q, nk, out};
}

std::pair<int, int> superdense(int a1, int a2, int q) {
    PureState s = apply(bell_state(0, 0, q), weyl(a1, a2, q), {0});
    auto br = bell_measure_branches(s, 0, 1);
    if (br.size() != 1) fail(Errc::Ambiguous, "superdense measurement not deterministic");
    return {br[0].outcome[0], br[0].outcome[1]};
}

std::vector<PureState> teleport(const PureState& psi) {
    if (psi.n != 1) fail(Errc::DimensionMismatch, "teleport takes one qudit");
    const int q = psi.q;
    PureState s = tensor(psi, bell_state(0, 0, q));
    std::vector<PureState> received;
    for (const auto& br : bell_measure_branches(s, 0, 1)) {
        const int i = br.outcome[0], j = br.outcome[1];
        PureState fixed = apply(br.post, weyl(i, j, q), {2});
        // Qudits 0 and 1 sit in |j, -i>; read off qudit 2.
        const long base = (static_cast<long>(j) * q + mod(-i, q)) * q;
        received.push_back(PureState::from_amplitudes(q, 1, fixed.amps.segment(base, q)));
    }
    return received;
}

std::pair<int, int> two_sum_transmit(std::pair<int, int> a, std::pair<int, int> b, int q) {
    PureState s = bell_state(0, 0, q);
    s = apply(s, weyl(a.first, a.second, q), {0});
    // (I (x) W(-b1, b2)) acts on beta_00 like W(b1, b2) (x) I up to phase.
    s = apply(s, weyl(-b.first, b.second, q), {1});
    auto br = bell_measure_branches(s, 0, 1);
    if (br.size() != 1) fail(Errc::Ambiguous, "two-sum measurement not deterministic");
    return {br[0].outcome[0], br[0].outcome[1]};
}

Stabilizer stabilizer_state(const symplectic::SelfOrthMat& so) {
    const gf::Field f = so.field();
    if (!f.is_prime_field()) fail(Errc::BadParameters, "stabilizer states need a prime field");
    const int p = f.p(), n = static_cast<int>(so.half());
    check_dim(p, n);
    const long dim = ipow(p, n);
    CMat basis = CMat::Identity(dim, dim);
    Stabilizer out;
    for (size_t k = 0; k < so.kappa(); ++k) {
        const CMat w = weyl_n(so.matrix().row(k));
        bool placed = false;
        // Phases are 2p-th roots of unity: for p = 2, XZ squares to -I.
        for (int t = 0; t < 2 * p && !placed; ++t) {
            const CMat a = omega(2 * p, t) * w;
            CMat power = CMat::Identity(dim, dim), proj = CMat::Zero(dim, dim);
            for (int j = 0; j < p; ++j) {
                proj += power;
                power = a * power;
            }
            if ((power - CMat::Identity(dim, dim)).norm() > kTol) continue;
            CMat restricted = range_basis((proj / p) * basis);
            if (restricted.cols() == 0) continue;
            basis = restricted;
            out.generators.push_back(a);
            placed = true;
        }
        if (!placed) fail(Errc::NoPhaseAssignmentFound, "no phase makes the generator stabilize a state");
    }
    out.state = PureState::from_amplitudes(p, n, basis.col(0));
    return out;
}

gf::Vec simulate_box(const nsumbox::SumBox& box, const gf::Vec& x) {
    using namespace linalg;
    if (box.kappa != box.n) fail(Errc::BadParameters, "simulate_box handles maximal boxes");
    if (x.size() != 2 * box.n) fail(Errc::DimensionMismatch, "box input must have length 2N");
    const gf::Field f = box.field;
    const int p = f.p();
    Stabilizer st = stabilizer_state(symplectic::SelfOrthMat(box.g));
    PureState phi = st.state;
    phi.amps = weyl_n(x) * phi.amps;
    gf::Vec syndrome;
    for (const auto& a : st.generators) {
        const Complex lambda = phi.amps.dot(a * phi.amps);
        int e = -1;
        for (int k = 0; k < p; ++k)
            if (std::abs(lambda - omega(p, k)) < 1e-6) e = k;
        if (e < 0) fail(Errc::Ambiguous, "state is not a stabilizer eigenstate");
        syndrome.push_back(f.from_int(-e));
    }
    Mat gjh = box.g * symplectic::j_matrix(box.n, f).transpose() * box.h.transpose();
    return mul(inverse(gjh), syndrome);
}

std::vector<SuiteCheck> self_check() {
    using gf::Field;
    using gf::Vec;
    std::vector<SuiteCheck> out;
    const Field f2 = Field::make(2), f3 = Field::make(3);

    const auto two = nsumbox::two_sum_box();
    SuiteCheck circuit{"two-sum circuit vs box", 0, 16}, physical{"two-sum stabilizer simulation vs box", 0, 16};
    for (int v = 0; v < 16; ++v) {
        const int a1 = v & 1, a2 = v >> 1 & 1, b1 = v >> 2 & 1, b2 = v >> 3 & 1;
        const Vec x = {f2.from_int(a1), f2.from_int(b1), f2.from_int(a2), f2.from_int(b2)};
        const Vec y = nsumbox::apply(two, x);
        const std::pair<int, int> want(static_cast<int>(y[0].code()), static_cast<int>(y[1].code()));
        circuit.matched += two_sum_transmit({a1, a2}, {b1, b2}) == want;
        physical.matched += simulate_box(two, x) == y;
    }
    out.push_back(circuit);
    out.push_back(physical);

    // A maximal box on two qutrits.
    const auto box3 = nsumbox::build_completed(linalg::Mat::from_ints(f3, 2, 4, {1, 1, 0, 0, 0, 0, 1, 2}));
    SuiteCheck qutrit{"qutrit box simulation vs box", 0, 81};
    for (int v = 0; v < 81; ++v) {
        Vec x;
        for (int i = 0, w = v; i < 4; ++i, w /= 3) x.push_back(f3.from_int(w % 3));
        qutrit.matched += simulate_box(box3, x) == nsumbox::apply(box3, x);
    }
    out.push_back(qutrit);

    SuiteCheck dense{"superdense coding", 0, 0};
    for (int q : {2, 3, 5})
        for (int a1 = 0; a1 < q; ++a1)
            for (int a2 = 0; a2 < q; ++a2, ++dense.total) dense.matched += superdense(a1, a2, q) == std::pair(a1, a2);
    out.push_back(dense);

    SuiteCheck tele{"teleportation, every branch", 0, 0};
    for (int q : {2, 3}) {
        CVec amps = CVec::Zero(q);
        for (int i = 0; i < q; ++i) amps(i) = Complex(1.0 + i, 0.5 * i);
        const PureState psi = PureState::from_amplitudes(q, 1, amps / amps.norm());
        for (const auto& got : teleport(psi)) {
            ++tele.total;
            tele.matched += equal_up_to_phase(got, psi);
        }
    }
    out.push_back(tele);

    const auto st = stabilizer_state(symplectic::SelfOrthMat(two.g));
    out.push_back({"stabilizer state of the two-sum G is beta_00", equal_up_to_phase(st.state, bell_state(0, 0, 2)) ? 1u : 0u, 1});
    return out;
}

}  // namespace qpirsim::qoracle
