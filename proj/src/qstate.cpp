#include "catsim/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace catsim {

namespace {

double vec_norm(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return std::sqrt(s);
}

void check_unit(double norm, const char* what) {
    if (std::abs(norm - 1.0) > kNormTol) {
        std::ostringstream os;
        os << what << " is not normalized (norm = " << norm << ")";
        throw domain_error(os.str());
    }
}

} // namespace

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 mat2_adjoint(const Mat2& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

bool mat2_is_unitary(const Mat2& m, double tol) {
    const Mat2 p = mat2_mul(mat2_adjoint(m), m);
    return std::abs(p[0] - 1.0) <= tol && std::abs(p[3] - 1.0) <= tol &&
           std::abs(p[1]) <= tol && std::abs(p[2]) <= tol;
}

QubitVector::QubitVector(cdouble c0, cdouble c1) : c0_(c0), c1_(c1) {
    check_unit(std::sqrt(std::norm(c0_) + std::norm(c1_)), "qubit vector");
}

QubitVector QubitVector::plus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s};
}

QubitVector QubitVector::minus() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, -s};
}

cdouble inner(const QubitVector& u, const QubitVector& v) {
    return std::conj(u.c0()) * v.c0() + std::conj(u.c1()) * v.c1();
}

SingleQubitGate::SingleQubitGate(const Mat2& m) : m_(m) {
    if (!mat2_is_unitary(m_)) throw domain_error("single-qubit gate is not unitary");
}

SingleQubitGate SingleQubitGate::identity() { return SingleQubitGate({1, 0, 0, 1}); }
SingleQubitGate SingleQubitGate::sigma_x() { return SingleQubitGate({0, 1, 1, 0}); }
SingleQubitGate SingleQubitGate::sigma_y() {
    return SingleQubitGate({0, cdouble(0, -1), cdouble(0, 1), 0});
}
SingleQubitGate SingleQubitGate::sigma_z() { return SingleQubitGate({1, 0, 0, -1}); }
SingleQubitGate SingleQubitGate::i_sigma_y() { return SingleQubitGate({0, 1, -1, 0}); }

SingleQubitGate SingleQubitGate::phase_shift(double delta) {
    return SingleQubitGate({1, 0, 0, std::polar(1.0, delta)});
}

SingleQubitGate SingleQubitGate::from_columns(const QubitVector& col0, const QubitVector& col1) {
    return SingleQubitGate({col0.c0(), col1.c0(), col0.c1(), col1.c1()});
}

SingleQubitGate SingleQubitGate::adjoint() const { return SingleQubitGate(mat2_adjoint(m_)); }

SingleQubitGate SingleQubitGate::operator*(const SingleQubitGate& rhs) const {
    return SingleQubitGate(mat2_mul(m_, rhs.m_));
}

QubitVector SingleQubitGate::apply(const QubitVector& v) const {
    return {m_[0] * v.c0() + m_[1] * v.c1(), m_[2] * v.c0() + m_[3] * v.c1()};
}

StateVector::StateVector(std::vector<std::string> labels, std::vector<cdouble> amplitudes)
    : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
    if (labels_.empty()) throw domain_error("state needs at least one qubit");
    if (amps_.size() != (std::size_t{1} << labels_.size()))
        throw domain_error("amplitude count must be 2^num_qubits");
    std::set<std::string> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) throw composition_error("duplicate qubit labels");
    check_unit(vec_norm(amps_), "state vector");
}

StateVector StateVector::computational(std::vector<std::string> labels, std::size_t index) {
    std::vector<cdouble> amps(std::size_t{1} << labels.size(), 0.0);
    amps.at(index) = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

StateVector StateVector::single(std::string label, const QubitVector& q) {
    return StateVector({std::move(label)}, {q.c0(), q.c1()});
}

StateVector StateVector::product(std::vector<std::string> labels, const std::vector<QubitVector>& factors) {
    if (labels.size() != factors.size()) throw domain_error("one factor per label required");
    const int n = static_cast<int>(labels.size());
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        cdouble a = 1.0;
        for (int k = 0; k < n; ++k) {
            const int bit = static_cast<int>((idx >> (n - 1 - k)) & 1u);
            a *= factors[static_cast<std::size_t>(k)].component(bit);
        }
        amps[idx] = a;
    }
    return StateVector(std::move(labels), std::move(amps));
}

int StateVector::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    throw addressing_error("unknown qubit label: " + label);
}

bool StateVector::has_label(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double StateVector::norm() const { return vec_norm(amps_); }

StateVector StateVector::reordered(const std::vector<std::string>& new_order) const {
    if (new_order.size() != labels_.size())
        throw domain_error("reorder must use the same label set");
    const int n = num_qubits();
    std::vector<int> pos(new_order.size());
    for (std::size_t k = 0; k < new_order.size(); ++k) pos[k] = index_of(new_order[k]);
    std::vector<cdouble> amps(amps_.size());
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
        std::size_t old_idx = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t bit = (idx >> (n - 1 - k)) & 1u;
            old_idx |= bit << (n - 1 - pos[static_cast<std::size_t>(k)]);
        }
        amps[idx] = amps_[old_idx];
    }
    return StateVector(new_order, std::move(amps));
}

StateVector product_superposition(cdouble alpha, const std::vector<QubitVector>& zero_factors,
                                  cdouble beta, const std::vector<QubitVector>& one_factors,
                                  std::vector<std::string> labels) {
    if (zero_factors.size() != labels.size() || one_factors.size() != labels.size())
        throw domain_error("factor lists must match the label count");
    const int n = static_cast<int>(labels.size());
    std::vector<cdouble> amps(std::size_t{1} << n);
    for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        cdouble pa = alpha, pb = beta;
        for (int k = 0; k < n; ++k) {
            const int bit = static_cast<int>((idx >> (n - 1 - k)) & 1u);
            pa *= zero_factors[static_cast<std::size_t>(k)].component(bit);
            pb *= one_factors[static_cast<std::size_t>(k)].component(bit);
        }
        amps[idx] = pa + pb;
    }
    return StateVector(std::move(labels), std::move(amps));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<std::string> labels = a.labels();
    for (const auto& l : b.labels()) {
        if (a.has_label(l)) throw composition_error("duplicate qubit label in tensor: " + l);
        labels.push_back(l);
    }
    std::vector<cdouble> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            amps[(i << b.num_qubits()) | j] = a.amplitude(i) * b.amplitude(j);
    return StateVector(std::move(labels), std::move(amps));
}

StateVector tensor(const std::vector<StateVector>& factors) {
    if (factors.empty()) throw domain_error("tensor of zero factors");
    StateVector out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
    return out;
}

StateVector apply_gate(const StateVector& state, const std::string& target, const SingleQubitGate& gate) {
    const int t = state.index_of(target);
    const int n = state.num_qubits();
    const std::size_t stride = std::size_t{1} << (n - 1 - t);
    std::vector<cdouble> amps = state.amplitudes();
    const Mat2& g = gate.matrix();
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & stride) continue;
        const cdouble a0 = amps[base];
        const cdouble a1 = amps[base | stride];
        amps[base] = g[0] * a0 + g[1] * a1;
        amps[base | stride] = g[2] * a0 + g[3] * a1;
    }
    return StateVector(state.labels(), std::move(amps));
}

int MeasurementBasis::target_count() const {
    if (elements.empty()) throw basis_error("empty measurement basis");
    std::size_t d = elements.front().size();
    int k = 0;
    while ((std::size_t{1} << k) < d) ++k;
    if ((std::size_t{1} << k) != d) throw basis_error("basis element length must be a power of two");
    return k;
}

const std::string& MeasurementBasis::outcome_name(int index) const {
    if (index < static_cast<int>(elements.size())) return outcome_names.at(static_cast<std::size_t>(index));
    return complement_name;
}

void MeasurementBasis::validate() const {
    const std::size_t d = std::size_t{1} << target_count();
    if (elements.size() > d) throw basis_error("more basis elements than the subspace dimension");
    if (outcome_names.size() != elements.size()) throw basis_error("one outcome name per element required");
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].size() != d) throw basis_error("inconsistent basis element lengths");
        for (std::size_t j = 0; j <= i; ++j) {
            cdouble ip = 0.0;
            for (std::size_t k = 0; k < d; ++k) ip += std::conj(elements[j][k]) * elements[i][k];
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(ip - want) > kNormTol)
                throw basis_error("measurement basis is not orthonormal");
        }
    }
    if (!has_complement && elements.size() != d)
        throw basis_error("basis without complement must span the subspace");
}

namespace {

// Splits each amplitude index into (target bits, rest bits). Targets need not
// be contiguous; rest keeps the original relative order.
struct IndexSplit {
    std::vector<int> target_pos;
    std::vector<int> rest_pos;
    int n;

    IndexSplit(const StateVector& state, const std::vector<std::string>& targets)
        : n(state.num_qubits()) {
        std::set<int> tset;
        for (const auto& t : targets) {
            const int p = state.index_of(t);
            if (!tset.insert(p).second) throw domain_error("duplicate measurement target: " + t);
            target_pos.push_back(p);
        }
        for (int p = 0; p < n; ++p)
            if (!tset.count(p)) rest_pos.push_back(p);
    }

    std::size_t target_index(std::size_t full) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < target_pos.size(); ++k)
            idx |= ((full >> (n - 1 - target_pos[k])) & 1u) << (target_pos.size() - 1 - k);
        return idx;
    }

    std::size_t rest_index(std::size_t full) const {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < rest_pos.size(); ++k)
            idx |= ((full >> (n - 1 - rest_pos[k])) & 1u) << (rest_pos.size() - 1 - k);
        return idx;
    }

    std::size_t combine(std::size_t tgt, std::size_t rest) const {
        std::size_t full = 0;
        for (std::size_t k = 0; k < target_pos.size(); ++k)
            full |= ((tgt >> (target_pos.size() - 1 - k)) & 1u) << (n - 1 - target_pos[k]);
        for (std::size_t k = 0; k < rest_pos.size(); ++k)
            full |= ((rest >> (rest_pos.size() - 1 - k)) & 1u) << (n - 1 - rest_pos[k]);
        return full;
    }
};

std::vector<cdouble> contract_element(const StateVector& state, const IndexSplit& split,
                                      const std::vector<cdouble>& element) {
    std::vector<cdouble> out(std::size_t{1} << split.rest_pos.size(), 0.0);
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const cdouble c = std::conj(element[split.target_index(idx)]);
        if (c == cdouble{}) continue;
        out[split.rest_index(idx)] += c * state.amplitude(idx);
    }
    return out;
}

} // namespace

Projection project(const StateVector& state, const std::vector<std::string>& targets,
                   const std::vector<cdouble>& element) {
    IndexSplit split(state, targets);
    if (split.rest_pos.empty()) throw domain_error("projection would consume every qubit");
    if (element.size() != (std::size_t{1} << targets.size()))
        throw domain_error("projection element has the wrong dimension");
    std::vector<cdouble> rest = contract_element(state, split, element);
    const double norm = vec_norm(rest);
    Projection out;
    out.probability = norm * norm;
    if (out.probability >= kZeroProb) {
        for (auto& c : rest) c /= norm;
        std::vector<std::string> rest_labels;
        for (int p : split.rest_pos) rest_labels.push_back(state.labels()[static_cast<std::size_t>(p)]);
        out.remainder = StateVector(std::move(rest_labels), std::move(rest));
    }
    return out;
}

std::vector<MeasurementOutcome> measure(const StateVector& state,
                                        const std::vector<std::string>& targets,
                                        const MeasurementBasis& basis) {
    basis.validate();
    if (basis.target_count() != static_cast<int>(targets.size()))
        throw domain_error("basis dimension does not match the target count");
    IndexSplit split(state, targets);

    std::vector<MeasurementOutcome> outcomes;
    // Accumulates sum_k P_k |psi> for the complement projector.
    std::vector<cdouble> projected_total(state.dim(), 0.0);

    for (std::size_t k = 0; k < basis.elements.size(); ++k) {
        const auto& el = basis.elements[k];
        std::vector<cdouble> rest = contract_element(state, split, el);
        const double norm = vec_norm(rest);
        MeasurementOutcome o;
        o.index = static_cast<int>(k);
        o.name = basis.outcome_names[k];
        o.probability = norm * norm;
        if (o.probability >= kZeroProb) {
            // Post state = |el> ⊗ rest / norm, laid out on the original labels.
            std::vector<cdouble> post(state.dim(), 0.0);
            for (std::size_t t = 0; t < el.size(); ++t) {
                if (el[t] == cdouble{}) continue;
                for (std::size_t r = 0; r < rest.size(); ++r)
                    post[split.combine(t, r)] = el[t] * rest[r] / norm;
            }
            o.post = StateVector(state.labels(), std::move(post));
        }
        if (basis.has_complement) {
            for (std::size_t t = 0; t < el.size(); ++t) {
                if (el[t] == cdouble{}) continue;
                for (std::size_t r = 0; r < rest.size(); ++r)
                    projected_total[split.combine(t, r)] += el[t] * rest[r];
            }
        }
        outcomes.push_back(std::move(o));
    }

    if (basis.has_complement) {
        std::vector<cdouble> residual(state.dim());
        for (std::size_t i = 0; i < residual.size(); ++i)
            residual[i] = state.amplitude(i) - projected_total[i];
        const double norm = vec_norm(residual);
        MeasurementOutcome o;
        o.index = static_cast<int>(basis.elements.size());
        o.name = basis.complement_name;
        o.probability = norm * norm;
        if (o.probability >= kZeroProb) {
            for (auto& c : residual) c /= norm;
            o.post = StateVector(state.labels(), std::move(residual));
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

std::vector<MeasurementOutcome> measure_kraus(const StateVector& state, const std::string& target,
                                              const std::vector<Mat2>& operators,
                                              const std::vector<std::string>& names) {
    if (operators.empty() || operators.size() != names.size())
        throw domain_error("one name per Kraus operator required");
    Mat2 total{0, 0, 0, 0};
    for (const auto& k : operators) {
        const Mat2 p = mat2_mul(mat2_adjoint(k), k);
        for (int i = 0; i < 4; ++i) total[static_cast<std::size_t>(i)] += p[static_cast<std::size_t>(i)];
    }
    if (std::abs(total[0] - 1.0) > kNormTol || std::abs(total[3] - 1.0) > kNormTol ||
        std::abs(total[1]) > kNormTol || std::abs(total[2]) > kNormTol)
        throw domain_error("Kraus operators do not satisfy the completeness relation");

    const int t = state.index_of(target);
    const int n = state.num_qubits();
    const std::size_t stride = std::size_t{1} << (n - 1 - t);

    std::vector<MeasurementOutcome> outcomes;
    for (std::size_t k = 0; k < operators.size(); ++k) {
        const Mat2& g = operators[k];
        std::vector<cdouble> amps = state.amplitudes();
        for (std::size_t base = 0; base < amps.size(); ++base) {
            if (base & stride) continue;
            const cdouble a0 = amps[base];
            const cdouble a1 = amps[base | stride];
            amps[base] = g[0] * a0 + g[1] * a1;
            amps[base | stride] = g[2] * a0 + g[3] * a1;
        }
        const double norm = vec_norm(amps);
        MeasurementOutcome o;
        o.index = static_cast<int>(k);
        o.name = names[k];
        o.probability = norm * norm;
        if (o.probability >= kZeroProb) {
            for (auto& c : amps) c /= norm;
            o.post = StateVector(state.labels(), std::move(amps));
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

DensityMatrix::DensityMatrix(std::vector<std::string> labels, Eigen::MatrixXcd matrix)
    : labels_(std::move(labels)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << labels_.size());
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw domain_error("density matrix dimension must be 2^num_qubits");
}

void DensityMatrix::validate() const {
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
        throw domain_error("density matrix is not Hermitian");
    if (std::abs(matrix_.trace() - cdouble(1.0, 0.0)) > kNormTol)
        throw domain_error("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw domain_error("density matrix has a negative eigenvalue");
}

DensityMatrix partial_trace(const StateVector& state, const std::vector<std::string>& keep) {
    if (keep.empty()) throw domain_error("partial trace must keep at least one qubit");
    IndexSplit split(state, keep);
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t rd = std::size_t{1} << split.rest_pos.size();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    // rho[i,j] = sum_rest psi(i, rest) conj(psi(j, rest)); keep[0] is the MSB.
    std::vector<cdouble> slice(kd);
    for (std::size_t r = 0; r < rd; ++r) {
        for (std::size_t i = 0; i < kd; ++i) slice[i] = state.amplitude(split.combine(i, r));
        for (std::size_t i = 0; i < kd; ++i) {
            if (slice[i] == cdouble{}) continue;
            for (std::size_t j = 0; j < kd; ++j)
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += slice[i] * std::conj(slice[j]);
        }
    }
    return DensityMatrix(keep, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
    if (keep.empty()) throw domain_error("partial trace must keep at least one qubit");
    const int n = rho.num_qubits();
    std::vector<int> keep_pos;
    std::set<int> kset;
    for (const auto& l : keep) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (rho.labels()[static_cast<std::size_t>(i)] == l) p = i;
        if (p < 0) throw addressing_error("unknown qubit label: " + l);
        if (!kset.insert(p).second) throw domain_error("duplicate label in keep set");
        keep_pos.push_back(p);
    }
    std::vector<int> rest_pos;
    for (int p = 0; p < n; ++p)
        if (!kset.count(p)) rest_pos.push_back(p);

    const std::size_t kd = std::size_t{1} << keep_pos.size();
    const std::size_t rd = std::size_t{1} << rest_pos.size();
    auto combine = [&](std::size_t kidx, std::size_t ridx) {
        std::size_t full = 0;
        for (std::size_t k = 0; k < keep_pos.size(); ++k)
            full |= ((kidx >> (keep_pos.size() - 1 - k)) & 1u) << (n - 1 - keep_pos[k]);
        for (std::size_t k = 0; k < rest_pos.size(); ++k)
            full |= ((ridx >> (rest_pos.size() - 1 - k)) & 1u) << (n - 1 - rest_pos[k]);
        return full;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    for (std::size_t i = 0; i < kd; ++i)
        for (std::size_t j = 0; j < kd; ++j) {
            cdouble s = 0.0;
            for (std::size_t r = 0; r < rd; ++r)
                s += rho.matrix()(static_cast<Eigen::Index>(combine(i, r)), static_cast<Eigen::Index>(combine(j, r)));
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
        }
    return DensityMatrix(keep, std::move(out));
}

double fidelity(const StateVector& state, const StateVector& target) {
    if (state.num_qubits() != target.num_qubits())
        throw domain_error("fidelity requires matching systems");
    for (const auto& l : target.labels())
        if (!state.has_label(l)) throw domain_error("fidelity requires matching label sets");
    const StateVector s = state.reordered(target.labels());
    cdouble overlap = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        overlap += std::conj(target.amplitude(i)) * s.amplitude(i);
    return std::norm(overlap);
}

std::vector<double> schmidt(const StateVector& state, const std::vector<std::string>& left_labels) {
    std::set<std::string> left(left_labels.begin(), left_labels.end());
    if (left.size() != left_labels.size()) throw domain_error("duplicate label in bipartition");
    if (left.empty() || left.size() == state.labels().size())
        throw domain_error("bipartition must split the system in two");
    std::vector<std::string> order = left_labels;
    for (const auto& l : state.labels())
        if (!left.count(l)) order.push_back(l);
    const StateVector s = state.reordered(order); // also rejects unknown labels
    const int nl = static_cast<int>(left_labels.size());
    const int nr = s.num_qubits() - nl;
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(1) << nl, static_cast<Eigen::Index>(1) << nr);
    for (std::size_t i = 0; i < (std::size_t{1} << nl); ++i)
        for (std::size_t j = 0; j < (std::size_t{1} << nr); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.amplitude((i << nr) | j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> coeffs(svd.singularValues().data(),
                               svd.singularValues().data() + svd.singularValues().size());
    std::sort(coeffs.begin(), coeffs.end(), std::greater<>());
    return coeffs;
}

double entanglement_entropy(const std::vector<double>& schmidt_coefficients) {
    double e = 0.0;
    for (double c : schmidt_coefficients) {
        const double p = c * c;
        if (p >= 1e-15) e -= p * std::log2(p);
    }
    return e;
}

double negativity(const DensityMatrix& rho) {
    if (rho.num_qubits() != 2) throw domain_error("negativity requires a two-qubit state");
    // Partial transpose on the second qubit: (i1 i2, j1 j2) -> (i1 j2, j1 i2).
    Eigen::Matrix4cd pt;
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2)
            for (int j1 = 0; j1 < 2; ++j1)
                for (int j2 = 0; j2 < 2; ++j2)
                    pt(2 * i1 + j2, 2 * j1 + i2) = rho.matrix()(2 * i1 + i2, 2 * j1 + j2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt, Eigen::EigenvaluesOnly);
    double trace_norm = 0.0;
    for (int i = 0; i < 4; ++i) trace_norm += std::abs(es.eigenvalues()(i));
    return std::max(0.0, (trace_norm - 1.0) / 2.0);
}

} // namespace catsim
