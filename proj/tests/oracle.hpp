#pragma once

// Test-only brute-force oracle. Everything here works on explicit full
// matrices built from Kronecker products, independently of the library's
// bit-stride kernels, so the two routes can check each other.

#include <complex>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using cvec = std::vector<cd>;
using cmat = std::vector<std::vector<cd>>;

inline cvec kron(const cvec& a, const cvec& b) {
    cvec out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

inline cmat kron(const cmat& a, const cmat& b) {
    const std::size_t ar = a.size(), ac = a[0].size(), br = b.size(), bc = b[0].size();
    cmat out(ar * br, cvec(ac * bc));
    for (std::size_t i = 0; i < ar; ++i)
        for (std::size_t j = 0; j < ac; ++j)
            for (std::size_t k = 0; k < br; ++k)
                for (std::size_t l = 0; l < bc; ++l) out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
    return out;
}

inline cmat identity(std::size_t n) {
    cmat out(n, cvec(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1.0;
    return out;
}

inline cd inner(const cvec& a, const cvec& b) {
    cd s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm(const cvec& a) { return std::sqrt(std::real(inner(a, a))); }

inline cvec matvec(const cmat& m, const cvec& v) {
    cvec out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline cvec add(const cvec& a, const cvec& b, cd wa = 1.0, cd wb = 1.0) {
    cvec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = wa * a[i] + wb * b[i];
    return out;
}

// Single-qubit operator embedded at position `target` of `n` qubits,
// qubit 0 being the most significant index bit.
inline cmat embed(int n, int target, const cmat& u) {
    cmat out = (target == 0) ? u : identity(2);
    if (target == 0) {
        for (int q = 1; q < n; ++q) out = kron(out, identity(2));
        return out;
    }
    for (int q = 1; q < n; ++q) out = kron(out, q == target ? u : identity(2));
    return out;
}

// Projector |e><e| on the leading qubits tensored with identity on the rest.
inline cmat leading_projector(const cvec& element, std::size_t rest_dim) {
    cmat proj(element.size(), cvec(element.size()));
    for (std::size_t i = 0; i < element.size(); ++i)
        for (std::size_t j = 0; j < element.size(); ++j) proj[i][j] = element[i] * std::conj(element[j]);
    return kron(proj, identity(rest_dim));
}

// Reduced density matrix over the leading k qubits of an n-qubit pure state.
inline cmat reduced_leading(const cvec& psi, int n, int k) {
    const std::size_t kd = std::size_t{1} << k;
    const std::size_t rd = std::size_t{1} << (n - k);
    cmat rho(kd, cvec(kd, 0.0));
    for (std::size_t i = 0; i < kd; ++i)
        for (std::size_t j = 0; j < kd; ++j)
            for (std::size_t r = 0; r < rd; ++r) rho[i][j] += psi[i * rd + r] * std::conj(psi[j * rd + r]);
    return rho;
}

} // namespace oracle
