#include "kcomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace kcomp {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_of(double magnitude, double carrier) {
    return carrier >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

}  // namespace

double LuFactors::determinant() const {
    if (singular) return 0.0;
    double det = parity;
    for (int i = 0; i < lu.rows(); ++i) det *= lu(i, i);
    return det;
}

LuFactors lu_factor(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("lu_factor: matrix not square");
    const int n = a.rows();
    LuFactors f{a, std::vector<int>(n), 1, false};
    std::iota(f.perm.begin(), f.perm.end(), 0);
    Matrix& m = f.lu;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (std::abs(m(i, col)) > best) {
                best = std::abs(m(i, col));
                pivot = i;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            continue;
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
            std::swap(f.perm[pivot], f.perm[col]);
            f.parity = -f.parity;
        }
        for (int i = col + 1; i < n; ++i) {
            m(i, col) /= m(col, col);
            const double factor = m(i, col);
            if (factor == 0.0) continue;
            for (int j = col + 1; j < n; ++j) m(i, j) -= factor * m(col, j);
        }
    }
    return f;
}

std::vector<double> lu_solve(const LuFactors& f, const std::vector<double>& b) {
    const int n = f.lu.rows();
    if (static_cast<int>(b.size()) != n) throw std::domain_error("lu_solve: size mismatch");
    if (f.singular) throw std::domain_error("lu_solve: matrix is singular");
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
        x[i] = s / f.lu(i, i);
    }
    return x;
}

double determinant(const Matrix& a) { return lu_factor(a).determinant(); }

Matrix inverse(const Matrix& a) {
    const LuFactors f = lu_factor(a);
    if (f.singular) throw std::domain_error("inverse: matrix is singular");
    const int n = a.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = lu_solve(f, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

double condition_estimate_inf(const Matrix& a) {
    const LuFactors f = lu_factor(a);
    if (f.singular) return std::numeric_limits<double>::infinity();
    const int n = a.rows();
    Matrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = lu_solve(f, e);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
        e[j] = 0.0;
    }
    return a.norm_inf() * inv.norm_inf();
}

SymmetricEigen symmetric_eigen(const Matrix& a, double tol) {
    if (!a.is_square()) throw std::domain_error("symmetric_eigen: matrix not square");
    const int n = a.rows();
    // symmetrize to absorb roundoff in callers that form (A+Aᵀ)/2 themselves
    Matrix s(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    Matrix v = Matrix::identity(n);

    const double frob = std::max(s.norm_frobenius(), kEps);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (std::sqrt(off) <= tol * frob) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = sign_of(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int i = 0; i < n; ++i) {
                    const double sip = s(i, p), siq = s(i, q);
                    s(i, p) = c * sip - sn * siq;
                    s(i, q) = sn * sip + c * siq;
                }
                for (int j = 0; j < n; ++j) {
                    const double spj = s(p, j), sqj = s(q, j);
                    s(p, j) = c * spj - sn * sqj;
                    s(q, j) = sn * spj + c * sqj;
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return s(i, i) > s(j, j); });

    SymmetricEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = s(order[j], order[j]);
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> symmetric_eigenvalues(const Matrix& a, double tol) {
    return symmetric_eigen(a, tol).values;
}

namespace {

void balance_in_place(Matrix& a) {
    const int n = a.rows();
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

void hessenberg_in_place(Matrix& a) {
    const int n = a.rows();
    std::vector<double> v(n);
    for (int col = 0; col < n - 2; ++col) {
        double norm = 0.0;
        for (int i = col + 1; i < n; ++i) norm += a(i, col) * a(i, col);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        double alpha = a(col + 1, col) > 0.0 ? -norm : norm;
        double vtv = 0.0;
        for (int i = col + 1; i < n; ++i) {
            v[i] = a(i, col);
            if (i == col + 1) v[i] -= alpha;
            vtv += v[i] * v[i];
        }
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;
        // left: A ← (I − β v vᵀ) A
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int i = col + 1; i < n; ++i) dot += v[i] * a(i, j);
            dot *= beta;
            for (int i = col + 1; i < n; ++i) a(i, j) -= dot * v[i];
        }
        // right: A ← A (I − β v vᵀ)
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = col + 1; j < n; ++j) dot += a(i, j) * v[j];
            dot *= beta;
            for (int j = col + 1; j < n; ++j) a(i, j) -= dot * v[j];
        }
        a(col + 1, col) = alpha;
        for (int i = col + 2; i < n; ++i) a(i, col) = 0.0;
    }
}

// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
std::vector<std::complex<double>> hqr_in_place(Matrix& a) {
    const int n = a.rows();
    std::vector<std::complex<double>> wri(n);
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
    if (anorm == 0.0) return wri;

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l > 0; --l) {
                double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = a(nn, nn);
            if (l == nn) {
                wri[nn--] = x + t;
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        wri[nn - 1] = wri[nn] = x + z;
                        if (z != 0.0) wri[nn] = x - w / z;
                    } else {
                        wri[nn] = std::complex<double>(x + p, -z);
                        wri[nn - 1] = std::conj(wri[nn]);
                    }
                    nn -= 2;
                } else {
                    if (its == 50) throw std::runtime_error("eigenvalues: QR iteration failed to converge");
                    if (its == 10 || its == 20 || its == 30 || its == 40) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        const double rr = x - z;
                        const double ss = y - z;
                        p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - rr - ss;
                        r = a(m + 2, m + 1);
                        const double scale = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= scale;
                        q /= scale;
                        r /= scale;
                        if (m == l) break;
                        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        a(i + 2, i) = 0.0;
                        if (i != m) a(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        double x2 = 0.0;
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = 0.0;
                            if (k + 1 != nn) r = a(k + 2, k - 1);
                            x2 = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x2 != 0.0) {
                                p /= x2;
                                q /= x2;
                                r /= x2;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x2;
                        }
                        p += s;
                        const double px = p / s;
                        const double py = q / s;
                        const double pz = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pp = a(k, j) + q * a(k + 1, j);
                            if (k + 1 != nn) {
                                pp += r * a(k + 2, j);
                                a(k + 2, j) -= pp * pz;
                            }
                            a(k + 1, j) -= pp * py;
                            a(k, j) -= pp * px;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            double pp = px * a(i, k) + py * a(i, k + 1);
                            if (k + 1 != nn) {
                                pp += pz * a(i, k + 2);
                                a(i, k + 2) -= pp * r;
                            }
                            a(i, k + 1) -= pp * q;
                            a(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return wri;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("eigenvalues: matrix not square");
    if (!a.all_finite()) throw std::domain_error("eigenvalues: non-finite entries");
    if (a.rows() == 0) return {};
    if (a.rows() == 1) return {std::complex<double>(a(0, 0), 0.0)};
    Matrix work = a;
    balance_in_place(work);
    hessenberg_in_place(work);
    return hqr_in_place(work);
}

Matrix expm(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("expm: matrix not square");
    const int n = a.rows();
    const double nrm = a.norm_inf();
    int squarings = 0;
    if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
    Matrix b = a * std::ldexp(1.0, -squarings);

    // [6/6] Pade: N(B) = Σ c_k B^k, D(B) = Σ c_k (−B)^k
    constexpr int order = 6;
    double c[order + 1];
    c[0] = 1.0;
    for (int k = 0; k < order; ++k)
        c[k + 1] = c[k] * static_cast<double>(order - k) / ((2.0 * order - k) * (k + 1));

    Matrix num = Matrix::identity(n);
    Matrix den = Matrix::identity(n);
    Matrix power = Matrix::identity(n);
    for (int k = 1; k <= order; ++k) {
        power = power * b;
        num += c[k] * power;
        den += (k % 2 == 0 ? c[k] : -c[k]) * power;
    }

    const LuFactors f = lu_factor(den);
    if (f.singular) throw std::runtime_error("expm: Pade denominator singular");
    Matrix result(n, n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = num(i, j);
        const std::vector<double> x = lu_solve(f, col);
        for (int i = 0; i < n; ++i) result(i, j) = x[i];
    }
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

double spectral_norm(const Matrix& a, double tol, int max_iter) {
    const int rows = a.rows(), cols = a.cols();
    if (rows == 0 || cols == 0) return 0.0;
    // power iteration on G = AᵀA
    Matrix g(cols, cols);
    for (int i = 0; i < cols; ++i)
        for (int j = 0; j < cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < rows; ++k) s += a(k, i) * a(k, j);
            g(i, j) = s;
        }
    std::vector<double> v(cols);
    for (int i = 0; i < cols; ++i) v[i] = 1.0 + static_cast<double>(i) / cols;
    double scale = vec_norm_two(v);
    for (double& x : v) x /= scale;

    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        std::vector<double> w = g.apply(v);
        double next = 0.0;
        for (int i = 0; i < cols; ++i) next += v[i] * w[i];
        const double wn = vec_norm_two(w);
        if (wn == 0.0) return 0.0;
        for (int i = 0; i < cols; ++i) v[i] = w[i] / wn;
        if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
            lambda = next;
            break;
        }
        lambda = next;
    }
    return std::sqrt(std::max(lambda, 0.0));
}

Matrix sqrtm_spd(const Matrix& a) {
    if (!a.is_square()) throw std::domain_error("sqrtm_spd: matrix not square");
    if (max_abs_diff(a, a.transpose()) > 1e-9 * std::max(1.0, a.max_abs()))
        throw std::domain_error("sqrtm_spd: matrix not symmetric");
    const SymmetricEigen eig = symmetric_eigen(a);
    const int n = a.rows();
    const double lead = eig.values.empty() ? 0.0 : eig.values.front();
    if (eig.values.empty() || eig.values.back() <= 1e-13 * std::max(1.0, lead))
        throw std::domain_error("sqrtm_spd: matrix not positive definite");
    Matrix root(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += eig.vectors(i, k) * std::sqrt(eig.values[k]) * eig.vectors(j, k);
            root(i, j) = s;
        }
    return root;
}

}  // namespace kcomp
