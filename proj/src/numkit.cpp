#include "hermite/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hermite/errors.hpp"

namespace hermite::numkit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_of(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// In-place LU with partial pivoting: PA = LU, unit lower L below the diagonal.
struct LuFactors {
  DenseMatrix lu;
  std::vector<std::size_t> perm;

  std::vector<double> solve(std::span<const double> b) const {
    const std::size_t n = lu.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (std::size_t i = 0; i < n; ++i) {
      double s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
      x[i] = s / lu(i, i);
    }
    return x;
  }

  // Solves A^T x = b, i.e. U^T L^T P x = b.
  std::vector<double> solve_transposed(std::span<const double> b) const {
    const std::size_t n = lu.rows();
    std::vector<double> w(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
      double s = w[i];
      for (std::size_t j = 0; j < i; ++j) s -= lu(j, i) * w[j];
      w[i] = s / lu(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = w[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= lu(j, i) * w[j];
      w[i] = s;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[perm[i]] = w[i];
    return x;
  }
};

LuFactors factorize(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  LuFactors f{a, std::vector<std::size_t>(n)};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  DenseMatrix& lu = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        p = i;
      }
    }
    if (best == 0.0) {
      throw SolvabilityError("lu_solve: exact zero pivot in column " + std::to_string(k),
                             std::numeric_limits<double>::infinity());
    }
    if (p != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(p).begin());
      std::swap(f.perm[k], f.perm[p]);
    }
    const double pivot = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / pivot;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
    }
  }
  return f;
}

double norm_one_vec(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

// Hager's power-like iteration for ||A^-1||_1 with Higham's extra test vector.
double inverse_norm_one_estimate(const LuFactors& f) {
  const std::size_t n = f.lu.rows();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    const std::vector<double> y = f.solve(x);
    estimate = std::max(estimate, norm_one_vec(y));
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = f.solve_transposed(xi);
    std::size_t jmax = 0;
    double zmax = 0.0;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ztx += z[i] * x[i];
      if (std::abs(z[i]) > zmax) {
        zmax = std::abs(z[i]);
        jmax = i;
      }
    }
    if (zmax <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  if (n > 1) {
    std::vector<double> alt(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double mag = 1.0 + static_cast<double>(i) / static_cast<double>(n - 1);
      alt[i] = (i % 2 == 0) ? mag : -mag;
    }
    const double alt_est =
        2.0 * norm_one_vec(f.solve(alt)) / (3.0 * static_cast<double>(n));
    estimate = std::max(estimate, alt_est);
  }
  return estimate;
}

void balance(DenseMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  const std::size_t n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
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
        c *= radix_sq;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix_sq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elementary similarities.
void to_hessenberg(DenseMatrix& a) {
  const std::size_t n = a.rows();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double x = 0.0;
    std::size_t i = m;
    for (std::size_t j = m; j < n; ++j) {
      if (std::abs(a(j, m - 1)) > std::abs(x)) {
        x = a(j, m - 1);
        i = j;
      }
    }
    if (i != m) {
      for (std::size_t j = m - 1; j < n; ++j) std::swap(a(i, j), a(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(a(j, i), a(j, m));
    }
    if (x == 0.0) continue;
    for (i = m + 1; i < n; ++i) {
      double y = a(i, m - 1);
      if (y == 0.0) continue;
      y /= x;
      a(i, m - 1) = y;
      for (std::size_t j = m; j < n; ++j) a(i, j) -= y * a(m, j);
      for (std::size_t j = 0; j < n; ++j) a(j, m) += y * a(j, i);
    }
  }
  for (std::size_t i = 2; i < n; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j) a(i, j) = 0.0;
}

// Francis double-shift QR on an upper Hessenberg matrix.
std::vector<std::complex<double>> hessenberg_qr(DenseMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> wr(n, 0.0);
  std::vector<double> wi(n, 0.0);
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  int nn = n - 1;
  double t = 0.0;
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, z = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      x = a(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        y = a(nn - 1, nn - 1);
        w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          p = 0.5 * (y - x);
          q = p * p + w;
          z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -z;
            wi[nn] = z;
          }
          nn -= 2;
        } else {
          if (its == 60) {
            throw NumericalError("dense_eigenvalues: QR iteration did not converge");
          }
          if (its == 10 || its == 20 || its == 40) {
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v =
                std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k + 1 != nn) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k + 1 != nn) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l + 1 < nn);
  }

  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = {wr[i], wi[i]};
  return out;
}

}  // namespace

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::norm_one() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

bool DenseMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double norm2(std::span<const double> v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x / scale) * (x / scale);
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double best = 0.0;
  for (double x : v) best = std::max(best, std::abs(x));
  return best;
}

std::vector<double> tridiag_eigenvalues(const SymTridiag& t) {
  const std::size_t n = t.size();
  if (n == 0) throw InputError("tridiag_eigenvalues: empty matrix");
  if (t.off_diagonal.size() + 1 != n) {
    throw InputError("tridiag_eigenvalues: off-diagonal length must be size-1");
  }
  std::vector<double> d = t.diagonal;
  std::vector<double> e(n, 0.0);
  std::copy(t.off_diagonal.begin(), t.off_diagonal.end(), e.begin());

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m == l) break;
      if (iter++ == 50) {
        throw NumericalError("tridiag_eigenvalues: no convergence for eigenvalue " +
                             std::to_string(l));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + sign_of(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

LuSolution lu_solve(const DenseMatrix& a, std::span<const double> b) {
  if (a.rows() != a.cols()) throw InputError("lu_solve: matrix must be square");
  if (b.size() != a.rows()) throw InputError("lu_solve: right-hand side size mismatch");
  const LuFactors f = factorize(a);
  LuSolution out;
  out.x = f.solve(b);
  out.condition = a.norm_one() * inverse_norm_one_estimate(f);
  return out;
}

std::vector<std::complex<double>> dense_eigenvalues(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("dense_eigenvalues: matrix must be square");
  if (a.rows() == 0) return {};
  DenseMatrix h = a;
  balance(h);
  to_hessenberg(h);
  return hessenberg_qr(h);
}

LstsqSolution lstsq(const DenseMatrix& a, std::span<const double> b) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  if (rows < cols) throw InputError("lstsq: need rows >= cols");
  if (b.size() != rows) throw InputError("lstsq: right-hand side size mismatch");

  DenseMatrix qr = a;
  std::vector<double> qtb(b.begin(), b.end());
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<double> rdiag(cols, 0.0);
  std::vector<double> v(rows);

  for (std::size_t k = 0; k < cols; ++k) {
    // Pivot on the largest remaining column norm, recomputed exactly.
    std::size_t p = k;
    double best = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += qr(i, j) * qr(i, j);
      if (s > best) {
        best = s;
        p = j;
      }
    }
    if (p != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(qr(i, k), qr(i, p));
      std::swap(perm[k], perm[p]);
    }

    double colnorm = 0.0;
    {
      std::vector<double> col(rows - k);
      for (std::size_t i = k; i < rows; ++i) col[i - k] = qr(i, k);
      colnorm = norm2(col);
    }
    if (colnorm == 0.0) {
      rdiag[k] = 0.0;
      continue;
    }
    const double alpha = qr(k, k) > 0.0 ? -colnorm : colnorm;
    for (std::size_t i = k; i < rows; ++i) v[i] = qr(i, k);
    v[k] -= alpha;
    double vnorm_sq = 0.0;
    for (std::size_t i = k; i < rows; ++i) vnorm_sq += v[i] * v[i];
    rdiag[k] = alpha;
    qr(k, k) = alpha;
    for (std::size_t i = k + 1; i < rows; ++i) qr(i, k) = 0.0;
    if (vnorm_sq == 0.0) continue;
    for (std::size_t j = k + 1; j < cols; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < rows; ++i) dot += v[i] * qr(i, j);
      const double scale = 2.0 * dot / vnorm_sq;
      for (std::size_t i = k; i < rows; ++i) qr(i, j) -= scale * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < rows; ++i) dot += v[i] * qtb[i];
    const double scale = 2.0 * dot / vnorm_sq;
    for (std::size_t i = k; i < rows; ++i) qtb[i] -= scale * v[i];
  }

  LstsqSolution out;
  const double rmax = cols > 0 ? std::abs(rdiag[0]) : 0.0;
  int rank = 0;
  for (std::size_t k = 0; k < cols; ++k) {
    if (std::abs(rdiag[k]) > 1e-12 * rmax) ++rank;
    else break;
  }
  out.rank = rank;

  std::vector<double> z(cols, 0.0);
  for (int k = rank - 1; k >= 0; --k) {
    double s = qtb[k];
    for (int j = k + 1; j < rank; ++j) s -= qr(k, j) * z[j];
    z[k] = s / qr(k, k);
  }
  out.x.assign(cols, 0.0);
  for (std::size_t k = 0; k < cols; ++k) out.x[perm[k]] = z[k];

  std::vector<double> resid = a.multiply(out.x);
  for (std::size_t i = 0; i < rows; ++i) resid[i] -= b[i];
  out.residual_norm = norm2(resid);
  return out;
}

}  // namespace hermite::numkit
