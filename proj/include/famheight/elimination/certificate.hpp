#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "famheight/elimination/morphism.hpp"
#include "famheight/exactalg/linalg.hpp"

namespace famheight {

/// Integer identities x_i^M * R = sum_j G_ij F_j, one row of cofactors per coordinate.
struct NullstellensatzCertificate {
    unsigned M = 0;
    BigInt R = 1;
    std::vector<std::vector<QPoly>> cofactors;

    /// Expands every identity and compares.
    bool verify(const QMorphism& f) const {
        const std::size_t n = f.forms().size();
        if (cofactors.size() != n) return false;
        for (std::size_t i = 0; i < n; ++i) {
            if (cofactors[i].size() != n) return false;
            QPoly lhs(n), rhs(n);
            Monomial xm(n, 0);
            xm[i] = M;
            lhs.add_term(xm, BigRat(R));
            for (std::size_t j = 0; j < n; ++j) rhs += cofactors[i][j] * f.forms()[j];
            if (!(lhs == rhs)) return false;
        }
        return true;
    }
};

namespace detail {

// Cofactors with x_i^M = sum_j G_j F_j over Q, or nothing if M is too small.
inline std::optional<std::vector<QPoly>> solve_cofactors(const QMorphism& f, std::size_t i, unsigned M) {
    const std::size_t n = f.forms().size();
    const unsigned d = f.degree();
    std::vector<Monomial> rows, shifts;
    all_monomials(n, M, rows);
    all_monomials(n, M - d, shifts);
    std::map<Monomial, std::size_t> row_of;
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    Matrix<BigRat> a(rows.size(), n * shifts.size());
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < shifts.size(); ++s)
            for (const auto& [m, c] : f.forms()[j]) {
                Monomial target = shifts[s];
                for (std::size_t v = 0; v < n; ++v) target[v] += m[v];
                a(row_of.at(target), j * shifts.size() + s) = c;
            }
    std::vector<BigRat> b(rows.size());
    Monomial xm(n, 0);
    xm[i] = M;
    b[row_of.at(xm)] = 1;
    auto sol = solve_rational(std::move(a), std::move(b));
    if (!sol) return std::nullopt;
    std::vector<QPoly> g(n, QPoly(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t s = 0; s < shifts.size(); ++s) g[j].add_term(shifts[s], (*sol)[j * shifts.size() + s]);
    return g;
}

}  // namespace detail

/// Smallest M (per coordinate, then the maximum) up to the Macaulay bound (N+1)(d-1)+1.
inline NullstellensatzCertificate nullstellensatz_certificate(const QMorphism& f) {
    const std::size_t n = f.forms().size();
    const unsigned d = f.degree();
    const unsigned bound = static_cast<unsigned>(n) * (d - 1) + 1;
    std::vector<std::vector<QPoly>> rows(n);
    std::vector<unsigned> exps(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (unsigned M = d; M <= bound && !found; ++M) {
            if (auto g = detail::solve_cofactors(f, i, M)) {
                rows[i] = std::move(*g);
                exps[i] = M;
                found = true;
            }
        }
        if (!found) throw ComputationError("no Nullstellensatz certificate: the forms share a zero");
    }
    NullstellensatzCertificate cert;
    cert.M = *std::max_element(exps.begin(), exps.end());
    BigInt lcm = 1;
    for (std::size_t i = 0; i < n; ++i) {
        QPoly pad = QPoly::variable(n, i);
        pad = pow(pad, cert.M - exps[i]);
        for (auto& g : rows[i]) {
            g = g * pad;
            for (const auto& [m, c] : g) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
        }
    }
    cert.R = lcm;
    for (auto& row : rows)
        for (auto& g : row) g = BigRat(lcm) * g;
    cert.cofactors = std::move(rows);
    return cert;
}

/// Write-once cache of certificates keyed by the morphism's text form. Concurrent callers
/// may compute the same entry twice; the first stored result wins and both are identical.
class CertificateCache {
public:
    static CertificateCache& global() {
        static CertificateCache cache;
        return cache;
    }

    std::shared_ptr<const NullstellensatzCertificate> get(const QMorphism& f) {
        const std::string key = f.to_string();
        {
            std::lock_guard lock(mu_);
            if (auto it = entries_.find(key); it != entries_.end()) return it->second;
        }
        auto cert = std::make_shared<const NullstellensatzCertificate>(nullstellensatz_certificate(f));
        std::lock_guard lock(mu_);
        return entries_.emplace(key, std::move(cert)).first->second;
    }

    std::size_t size() const {
        std::lock_guard lock(mu_);
        return entries_.size();
    }

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const NullstellensatzCertificate>> entries_;
};

}  // namespace famheight
