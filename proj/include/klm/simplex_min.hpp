#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "klm/gram.hpp"

namespace klm {

// Minimize  F(w) = <c, w> + scale * sqrt(w' Q w)  over the unit simplex.
//
// This is the common core of the hard-step dual and of the Kelley model
// subproblem: both are a linear term plus a scaled norm of a linear image of
// the simplex point. Q is given implicitly: coordinates 0..n_cuts-1 index
// bundle cuts whose pairwise gradient inner products come from a GramCache;
// an optional trailing coordinate has diagonal entry tail_diag and zero
// off-diagonal entries.
struct NormSimplexProblem {
    const GramCache* gram = nullptr;
    std::size_t n_cuts = 0;
    bool has_tail = false;
    double tail_diag = 0.0;
    std::vector<double> c;
    double scale = 0.0;

    std::size_t size() const { return n_cuts + (has_tail ? 1 : 0); }

    double q_entry(std::size_t i, std::size_t j) const {
        if (i < n_cuts && j < n_cuts) return gram->at(i, j);
        return (i == j) ? tail_diag : 0.0;
    }
};

struct NormSimplexResult {
    std::vector<double> w;
    double value = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
};

namespace detail {

// Cholesky factorization of a dense symmetric matrix (row-major, clobbered),
// followed by back-substitution on one or two right-hand sides. Returns
// false on a nonpositive pivot.
inline bool cholesky_solve(std::vector<double>& a, std::size_t n, std::vector<double>* rhs1,
                           std::vector<double>* rhs2) {
    for (std::size_t k = 0; k < n; ++k) {
        double d = a[k * n + k];
        for (std::size_t j = 0; j < k; ++j) d -= a[k * n + j] * a[k * n + j];
        if (!(d > 0.0)) return false;
        const double l = std::sqrt(d);
        a[k * n + k] = l;
        for (std::size_t i = k + 1; i < n; ++i) {
            double s = a[i * n + k];
            for (std::size_t j = 0; j < k; ++j) s -= a[i * n + j] * a[k * n + j];
            a[i * n + k] = s / l;
        }
    }
    for (std::vector<double>* rhs : {rhs1, rhs2}) {
        if (!rhs) continue;
        std::vector<double>& x = *rhs;
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= a[i * n + j] * x[j];
            x[i] = s / a[i * n + i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= a[j * n + ii] * x[j];
            x[ii] = s / a[ii * n + ii];
        }
    }
    return true;
}

// Cyclic Jacobi eigendecomposition of a dense symmetric matrix (row-major;
// clobbered to near-diagonal). Eigenvectors land in the columns of V.
inline void jacobi_eigen(std::vector<double>& a, std::size_t n, std::vector<double>& v) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag = std::max(diag, std::abs(a[i * n + i]));
            for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i * n + j]));
        }
        if (off <= 1e-15 * std::max(diag, 1e-300)) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (std::abs(apq) <= 1e-18 * std::max(diag, 1e-300)) continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
}

}  // namespace detail

// Solver state for minimize_norm_simplex. Kept as a class so the main loop,
// line search and polish can share the incrementally maintained q = Q w.
class NormSimplexSolver {
public:
    explicit NormSimplexSolver(const NormSimplexProblem& p) : p_(p), K_(p.size()) {
        diag_.resize(K_);
        for (std::size_t i = 0; i < K_; ++i) diag_[i] = p_.q_entry(i, i);
    }

    NormSimplexResult run(double tol, int max_iters, const std::vector<double>* warm) {
        init(warm);
        NormSimplexResult res;
        int it = 0;
        attempt_polish();
        double f_mark = std::numeric_limits<double>::infinity();
        int stall = 0;
        for (; it < max_iters; ++it) {
            const double rho2 = current_rho2();
            if (rho2 <= kTinyRho2) {
                if (!degenerate_escape()) break;  // stuck at a kink; let the caller certify
                continue;
            }
            const double rho = std::sqrt(rho2);
            // grad_k = c_k + scale * q_k / rho;  F(w) = <grad, w>.
            double gmin = std::numeric_limits<double>::infinity();
            double gmax_support = -std::numeric_limits<double>::infinity();
            std::size_t k_fw = 0, k_away = 0;
            double f = 0.0;
            for (std::size_t k = 0; k < K_; ++k) {
                const double g = p_.c[k] + p_.scale * q_[k] / rho;
                f += w_[k] * g;
                if (g < gmin) {
                    gmin = g;
                    k_fw = k;
                }
                if (w_[k] > 0.0 && g > gmax_support) {
                    gmax_support = g;
                    k_away = k;
                }
            }
            const double gap = f - gmin;
            if (gap <= tol) {
                res.converged = true;
                break;
            }
            // Candidate 1: pairwise step, moving mass from the worst support
            // vertex onto the best vertex. Candidate 2: classic step toward
            // the best vertex. Take whichever line search decreases F more.
            const double f_now = value();
            double best_f = f_now;
            int choice = -1;
            double gamma_pw = 0.0, gamma_fw = 0.0;
            if (k_away != k_fw && w_[k_away] > 0.0) {
                gamma_pw = line_search_pair(k_fw, k_away, w_[k_away]);
                const double fpw = value_after_pair(k_fw, k_away, gamma_pw);
                if (fpw < best_f) {
                    best_f = fpw;
                    choice = 0;
                }
            }
            {
                gamma_fw = line_search_toward(k_fw);
                const double ffw = value_after_toward(k_fw, gamma_fw);
                if (ffw < best_f) {
                    best_f = ffw;
                    choice = 1;
                }
            }
            if (choice == 0)
                apply_pair(k_fw, k_away, gamma_pw);
            else if (choice == 1)
                apply_toward(k_fw, gamma_fw);
            if ((it & 7) == 7) attempt_polish();
            if ((it & 127) == 127) refresh_q();
            if (choice == -1 && !attempt_polish()) break;  // no progress possible
            // Flat progress (typically micro-steps around a kink of the
            // radical): stop and let the caller certify at this point.
            const double f_cur = value();
            if (f_cur < f_mark - 1e-14 * (1.0 + std::abs(f_mark))) {
                f_mark = f_cur;
                stall = 0;
            } else if (++stall > 50) {
                break;
            }
        }
        res.w = w_;
        res.value = value();
        res.gap = current_gap();
        res.iters = it;
        return res;
    }

private:
    static constexpr double kTinyRho2 = 1e-280;

    const NormSimplexProblem& p_;
    std::size_t K_;
    std::vector<double> w_, q_, diag_, col_;

    void init(const std::vector<double>* warm) {
        w_.assign(K_, 0.0);
        if (warm && warm->size() == K_) {
            double sum = 0.0;
            for (std::size_t i = 0; i < K_; ++i) {
                w_[i] = std::max(0.0, (*warm)[i]);
                sum += w_[i];
            }
            if (sum > 0.0)
                for (double& x : w_) x /= sum;
            else
                warm = nullptr;
        }
        if (!warm || warm->size() != K_) {
            std::fill(w_.begin(), w_.end(), 0.0);
            if (p_.has_tail) {
                w_[K_ - 1] = 1.0;
            } else {
                // Best vertex by exact vertex value c_k + scale*sqrt(Q_kk).
                std::size_t best = 0;
                double bestv = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < K_; ++k) {
                    const double v = p_.c[k] + p_.scale * std::sqrt(std::max(0.0, diag_[k]));
                    if (v < bestv) {
                        bestv = v;
                        best = k;
                    }
                }
                w_[best] = 1.0;
            }
        }
        refresh_q();
    }

    void refresh_q() {
        q_.assign(K_, 0.0);
        for (std::size_t j = 0; j < K_; ++j) {
            if (w_[j] == 0.0) continue;
            for (std::size_t i = 0; i < K_; ++i) q_[i] += p_.q_entry(i, j) * w_[j];
        }
    }

    void load_column(std::size_t k) {
        col_.assign(K_, 0.0);
        for (std::size_t i = 0; i < K_; ++i) col_[i] = p_.q_entry(i, k);
    }

    double current_rho2() const {
        double s = 0.0;
        for (std::size_t i = 0; i < K_; ++i) s += w_[i] * q_[i];
        return std::max(0.0, s);
    }

    double value() const {
        double lin = 0.0;
        for (std::size_t i = 0; i < K_; ++i) lin += p_.c[i] * w_[i];
        return lin + p_.scale * std::sqrt(current_rho2());
    }

    double current_gap() {
        const double rho2 = current_rho2();
        if (rho2 <= kTinyRho2) {
            // Nonsmooth point: report the gap of the convention used by the
            // caller-side certificate (vertex values with zero radical).
            double gmin = 0.0;
            for (std::size_t k = 0; k < K_; ++k) gmin = std::min(gmin, p_.c[k]);
            return value() - gmin;
        }
        const double rho = std::sqrt(rho2);
        double f = 0.0, gmin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K_; ++k) {
            const double g = p_.c[k] + p_.scale * q_[k] / rho;
            f += w_[k] * g;
            gmin = std::min(gmin, g);
        }
        return f - gmin;
    }

    // Exact minimization of the convex restriction
    //   phi(t) = lin*t + scale*sqrt(rho2 + 2 qd t + dqd t^2)
    // over [0, tmax], by bisection on the sign of phi'.
    static double segment_min(double lin, double rho2, double qd, double dqd, double tmax) {
        auto deriv = [&](double t) {
            const double rad = std::max(rho2 + 2.0 * qd * t + dqd * t * t, 0.0);
            return lin + (qd + dqd * t) / std::sqrt(std::max(rad, 1e-300));
        };
        if (deriv(0.0) >= 0.0) return 0.0;
        if (deriv(tmax) <= 0.0) return tmax;
        double lo = 0.0, hi = tmax;
        for (int i = 0; i < 100; ++i) {
            const double mid = 0.5 * (lo + hi);
            (deriv(mid) <= 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    // Step w <- w + gamma (e_k - w), gamma in [0, 1].
    double line_search_toward(std::size_t k) {
        const double rho2 = current_rho2();
        double lin = p_.c[k];
        for (std::size_t i = 0; i < K_; ++i) lin -= p_.c[i] * w_[i];
        const double qd = q_[k] - rho2;
        const double dqd = diag_[k] - 2.0 * q_[k] + rho2;
        return segment_min(lin / p_.scale, rho2, qd, dqd, 1.0) * 1.0;
    }

    double value_after_toward(std::size_t k, double gamma) {
        const double rho2 = current_rho2();
        double lin0 = 0.0;
        for (std::size_t i = 0; i < K_; ++i) lin0 += p_.c[i] * w_[i];
        const double qd = q_[k] - rho2;
        const double dqd = diag_[k] - 2.0 * q_[k] + rho2;
        const double rad = std::max(rho2 + 2.0 * qd * gamma + dqd * gamma * gamma, 0.0);
        return lin0 + gamma * (p_.c[k] - lin0) + p_.scale * std::sqrt(rad);
    }

    void apply_toward(std::size_t k, double gamma) {
        load_column(k);
        for (std::size_t i = 0; i < K_; ++i) {
            w_[i] *= (1.0 - gamma);
            q_[i] = (1.0 - gamma) * q_[i] + gamma * col_[i];
        }
        w_[k] += gamma;
    }

    // Step w <- w + gamma (e_k - e_j), gamma in [0, w_j].
    double line_search_pair(std::size_t k, std::size_t j, double tmax) {
        const double rho2 = current_rho2();
        const double lin = p_.c[k] - p_.c[j];
        const double qd = q_[k] - q_[j];
        const double dqd = diag_[k] + diag_[j] - 2.0 * p_.q_entry(k, j);
        return segment_min(lin / p_.scale, rho2, qd, dqd, tmax);
    }

    double value_after_pair(std::size_t k, std::size_t j, double gamma) {
        const double rho2 = current_rho2();
        double lin0 = 0.0;
        for (std::size_t i = 0; i < K_; ++i) lin0 += p_.c[i] * w_[i];
        const double qd = q_[k] - q_[j];
        const double dqd = diag_[k] + diag_[j] - 2.0 * p_.q_entry(k, j);
        const double rad = std::max(rho2 + 2.0 * qd * gamma + dqd * gamma * gamma, 0.0);
        return lin0 + gamma * (p_.c[k] - p_.c[j]) + p_.scale * std::sqrt(rad);
    }

    void apply_pair(std::size_t k, std::size_t j, double gamma) {
        load_column(k);
        for (std::size_t i = 0; i < K_; ++i) q_[i] += gamma * col_[i];
        load_column(j);
        for (std::size_t i = 0; i < K_; ++i) q_[i] -= gamma * col_[i];
        w_[k] += gamma;
        w_[j] = std::max(0.0, w_[j] - gamma);
    }

    // At a point with Q w = 0 the radical is nonsmooth; F restricted to a
    // segment toward any vertex is linear there. Move to the best strictly
    // descending vertex, if one exists.
    bool degenerate_escape() {
        double base = 0.0;
        for (std::size_t i = 0; i < K_; ++i) base += p_.c[i] * w_[i];
        std::size_t best = K_;
        double best_slope = -1e-14 * (1.0 + std::abs(base));
        for (std::size_t k = 0; k < K_; ++k) {
            const double slope = p_.c[k] + p_.scale * std::sqrt(std::max(0.0, diag_[k])) - base;
            if (slope < best_slope) {
                best_slope = slope;
                best = k;
            }
        }
        if (best == K_) return false;
        apply_toward(best, 1.0);
        refresh_q();
        return true;
    }

    // Exact F of a sparse candidate, through the Gram entries.
    double face_value(const std::vector<std::size_t>& idx, const std::vector<double>& v) const {
        double lin = 0.0, r2 = 0.0;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            lin += p_.c[idx[i]] * v[i];
            for (std::size_t j = 0; j < idx.size(); ++j)
                r2 += v[i] * v[j] * p_.q_entry(idx[i], idx[j]);
        }
        return lin + p_.scale * std::sqrt(std::max(0.0, r2));
    }

    // Stationarity of the sigma-smoothed objective
    //   <c, v> + scale*sqrt(v' Q v + sigma^2)  s.t.  sum v = 1
    // on a face reduces to Q_A v = t (lambda 1 - c_A) with the two scalars
    // in closed form; sigma > 0 keeps the system meaningful when the
    // radical cancels on the optimal face (the smoothing bias on F is at
    // most scale*sigma). An NNLS-style drop loop restores nonnegativity.
    bool solve_face(std::vector<std::size_t> active, double sigma, std::vector<double>& v_out,
                    std::vector<std::size_t>& idx_out) const {
        for (int round = 0; round < 48 && !active.empty(); ++round) {
            const std::size_t a = active.size();
            std::vector<double> qa(a * a), z1(a, 1.0), zc(a);
            double max_diag = 0.0;
            for (std::size_t i = 0; i < a; ++i) {
                for (std::size_t j = 0; j < a; ++j) qa[i * a + j] = p_.q_entry(active[i], active[j]);
                max_diag = std::max(max_diag, qa[i * a + i]);
                zc[i] = p_.c[active[i]];
            }
            const double ridge = 1e-13 * std::max(max_diag, 1e-30);
            for (std::size_t i = 0; i < a; ++i) qa[i * a + i] += ridge;
            if (!detail::cholesky_solve(qa, a, &z1, &zc)) return false;
            double alpha1 = 0.0, alphac = 0.0, alphacc = 0.0;
            for (std::size_t i = 0; i < a; ++i) {
                alpha1 += z1[i];
                alphac += zc[i];
                alphacc += p_.c[active[i]] * zc[i];
            }
            const double den = alpha1 * p_.scale * p_.scale + alphac * alphac - alpha1 * alphacc;
            if (!(alpha1 > 0.0) || !(den > 0.0)) return false;
            const double t = std::sqrt((1.0 + alpha1 * sigma * sigma) / den);
            const double lambda = (1.0 / t + alphac) / alpha1;
            std::vector<double> v(a);
            double worst = 0.0;
            std::size_t worst_i = a;
            double sum = 0.0;
            for (std::size_t i = 0; i < a; ++i) {
                v[i] = t * (lambda * z1[i] - zc[i]);
                sum += v[i];
                if (v[i] < worst) {
                    worst = v[i];
                    worst_i = i;
                }
            }
            if (worst_i != a && worst < -1e-12) {
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst_i));
                continue;
            }
            if (!(sum > 0.0)) return false;
            for (std::size_t i = 0; i < a; ++i) v[i] = std::max(0.0, v[i]) / sum;
            v_out = std::move(v);
            idx_out = std::move(active);
            return true;
        }
        return false;
    }

    // Moves within the null space of the face Gram. Along v + gamma z with
    // Q_A z = 0 the vector S v is frozen, and after renormalizing onto the
    // simplex F is a monotone Moebius function of gamma, so the exact
    // minimizer is the blocking endpoint (or the pure null point z / 1'z
    // when nothing blocks). This escapes the faces on which the aggregated
    // gradient has cancelled, where any single-vertex step would re-inflate
    // the radical.
    bool attempt_null_slide() {
        constexpr std::size_t kMaxEig = 80;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < K_; ++i)
            if (w_[i] > 1e-14) idx.push_back(i);
        const std::size_t a = idx.size();
        if (a < 2 || a > kMaxEig) return false;

        std::vector<double> qa(a * a);
        double max_diag = 1e-300;
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < a; ++j) {
                qa[i * a + j] = p_.q_entry(idx[i], idx[j]);
                if (i == j) max_diag = std::max(max_diag, qa[i * a + j]);
            }
        std::vector<double> vecs;
        detail::jacobi_eigen(qa, a, vecs);
        std::vector<std::vector<double>> null_basis;
        for (std::size_t k = 0; k < a; ++k) {
            if (std::abs(qa[k * a + k]) > 1e-11 * max_diag) continue;
            std::vector<double> z(a);
            for (std::size_t i = 0; i < a; ++i) z[i] = vecs[i * a + k];
            null_basis.push_back(std::move(z));
        }
        if (null_basis.empty()) return false;

        std::vector<double> v(a);
        for (std::size_t i = 0; i < a; ++i) v[i] = w_[idx[i]];
        {
            double sum0 = 0.0;
            for (double x : v) sum0 += x;
            if (!(sum0 > 0.0)) return false;
            for (double& x : v) x /= sum0;
        }
        const double f_before = face_value(idx, v);
        double f_cur = f_before;

        for (int sweep = 0; sweep < 8; ++sweep) {
            bool sweep_moved = false;
            for (const std::vector<double>& zn : null_basis) {
                double s = 0.0, slope = 0.0;
                for (std::size_t i = 0; i < a; ++i) {
                    s += zn[i];
                    slope += p_.c[idx[i]] * zn[i];
                }
                // d/dgamma of (f_cur + gamma*slope) / (1 + gamma*s) at 0.
                double deriv = slope - f_cur * s;
                if (std::abs(deriv) <= 1e-15 * (1.0 + std::abs(f_cur))) continue;
                const double sign = deriv < 0.0 ? 1.0 : -1.0;
                double gmax = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < a; ++i) {
                    const double zi = sign * zn[i];
                    if (zi < -1e-18) gmax = std::min(gmax, v[i] / -zi);
                }
                const double ss = sign * s;
                std::vector<double> v_try(a);
                if (std::isfinite(gmax)) {
                    const double denom = 1.0 + gmax * ss;
                    if (!(denom > 1e-12)) continue;
                    for (std::size_t i = 0; i < a; ++i)
                        v_try[i] = std::max(0.0, (v[i] + gmax * sign * zn[i]) / denom);
                } else {
                    if (!(ss > 1e-18)) continue;  // unbounded ray needs positive mass
                    for (std::size_t i = 0; i < a; ++i) v_try[i] = std::max(0.0, sign * zn[i] / ss);
                }
                double sum = 0.0;
                for (double x : v_try) sum += x;
                if (!(sum > 0.0)) continue;
                for (double& x : v_try) x /= sum;
                const double f_new = face_value(idx, v_try);
                if (f_new < f_cur - 1e-16 * (1.0 + std::abs(f_cur))) {
                    f_cur = f_new;
                    v = std::move(v_try);
                    sweep_moved = true;
                }
            }
            if (!sweep_moved) break;
        }
        if (f_cur >= f_before - 1e-15 * (1.0 + std::abs(f_before))) return false;
        w_.assign(K_, 0.0);
        for (std::size_t i = 0; i < a; ++i) w_[idx[i]] = v[i];
        refresh_q();
        return true;
    }

    // Active-face polish. Solves the face problem in closed form (with a
    // short smoothing ladder to cover faces where the radical cancels) and
    // jumps there when it does not increase F, so a failed polish is
    // harmless.
    bool attempt_polish() {
        constexpr std::size_t kMaxFace = 600;
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < K_; ++i)
            if (w_[i] > 1e-12) active.push_back(i);
        // Let the support grow toward the most promising vertex.
        {
            const double rho2 = current_rho2();
            if (rho2 > kTinyRho2) {
                const double rho = std::sqrt(rho2);
                std::size_t k_fw = 0;
                double gmin = std::numeric_limits<double>::infinity();
                for (std::size_t k = 0; k < K_; ++k) {
                    const double g = p_.c[k] + p_.scale * q_[k] / rho;
                    if (g < gmin) {
                        gmin = g;
                        k_fw = k;
                    }
                }
                if (w_[k_fw] <= 1e-12) active.push_back(k_fw);
            }
        }
        if (active.empty() || active.size() > kMaxFace) return false;

        double scale_ref = 0.0;
        for (const std::size_t i : active) scale_ref = std::max(scale_ref, diag_[i]);
        scale_ref = std::sqrt(std::max(scale_ref, 1e-30));

        const double f_before = value();
        bool improved = false;
        for (const double sigma_rel : {0.0, 1e-7, 1e-10, 1e-13}) {
            std::vector<double> v;
            std::vector<std::size_t> idx;
            if (!solve_face(active, sigma_rel * scale_ref, v, idx)) continue;
            const double f_cand = face_value(idx, v);
            if (f_cand <= value() - 1e-15 * (1.0 + std::abs(f_cand))) {
                w_.assign(K_, 0.0);
                for (std::size_t i = 0; i < idx.size(); ++i) w_[idx[i]] = v[i];
                refresh_q();
            }
        }
        attempt_null_slide();
        return value() < f_before - 1e-15 * (1.0 + std::abs(f_before));
    }
};

inline NormSimplexResult minimize_norm_simplex(const NormSimplexProblem& p, double tol,
                                               int max_iters,
                                               const std::vector<double>* warm = nullptr) {
    NormSimplexSolver solver(p);
    return solver.run(tol, max_iters, warm);
}

}  // namespace klm
