#include "ceslab/eigen4.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace ceslab {

namespace {

constexpr int kN = 4;
constexpr double kDeflateRel = 1e-12;

double sign_of(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

void to_hessenberg(Matrix4& a) {
  for (int k = 0; k < kN - 2; ++k) {
    double alpha = 0.0;
    for (int i = k + 1; i < kN; ++i) alpha += a[i][k] * a[i][k];
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a[k + 1][k] > 0.0) alpha = -alpha;

    std::array<double, kN> v{};
    for (int i = k + 1; i < kN; ++i) v[i] = a[i][k];
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (int i = k + 1; i < kN; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;

    // A <- (I - 2vv'/v'v) A (I - 2vv'/v'v)
    for (int j = 0; j < kN; ++j) {
      double dot = 0.0;
      for (int i = k + 1; i < kN; ++i) dot += v[i] * a[i][j];
      const double f = 2.0 * dot / vnorm2;
      for (int i = k + 1; i < kN; ++i) a[i][j] -= f * v[i];
    }
    for (int i = 0; i < kN; ++i) {
      double dot = 0.0;
      for (int j = k + 1; j < kN; ++j) dot += a[i][j] * v[j];
      const double f = 2.0 * dot / vnorm2;
      for (int j = k + 1; j < kN; ++j) a[i][j] -= f * v[j];
    }
    a[k + 1][k] = alpha;
    for (int i = k + 2; i < kN; ++i) a[i][k] = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix.
Eigenvalues4 hessenberg_qr(Matrix4 a, int& total_iterations) {
  Eigenvalues4 ev{};
  std::vector<std::complex<double>> found;

  double anorm = 0.0;
  for (int i = 0; i < kN; ++i)
    for (int j = std::max(i - 1, 0); j < kN; ++j) anorm += std::abs(a[i][j]);

  const int budget = 100 * kN;
  total_iterations = 0;
  int nn = kN - 1;
  double shift_acc = 0.0;  // accumulated exceptional shifts

  auto record = [&](int idx, std::complex<double> value) {
    ev[idx] = value;
    found.push_back(value);
  };

  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a[l - 1][l - 1]) + std::abs(a[l][l]);
        if (s == 0.0) s = anorm;
        const double sub = std::abs(a[l][l - 1]);
        if (sub <= DBL_EPSILON * s || sub <= kDeflateRel * anorm) {
          a[l][l - 1] = 0.0;
          break;
        }
      }
      const double x = a[nn][nn];
      if (l == nn) {
        record(nn, x + shift_acc);
        --nn;
      } else {
        const double y = a[nn - 1][nn - 1];
        const double w = a[nn][nn - 1] * a[nn - 1][nn];
        if (l == nn - 1) {
          // Trailing 2x2 block in closed form.
          const double p = 0.5 * (y - x);
          const double q = p * p + w;
          const double zz = std::sqrt(std::abs(q));
          const double xs = x + shift_acc;
          if (q >= 0.0) {
            const double z = p + sign_of(zz, p);
            const double r1 = xs + z;
            const double r2 = z != 0.0 ? xs - w / z : r1;
            record(nn - 1, r1);
            record(nn, r2);
          } else {
            record(nn - 1, {xs + p, zz});
            record(nn, {xs + p, -zz});
          }
          nn -= 2;
        } else {
          if (total_iterations >= budget) throw NoConvergence(found, total_iterations);
          double sx = x, sy = y, sw = w;
          if (its == 10 || its == 20) {
            // Exceptional shift to break cycles.
            shift_acc += sx;
            for (int i = 0; i <= nn; ++i) a[i][i] -= sx;
            const double s = std::abs(a[nn][nn - 1]) + std::abs(a[nn - 1][nn - 2]);
            sy = sx = 0.75 * s;
            sw = -0.4375 * s * s;
          }
          ++its;
          ++total_iterations;

          // Look for two consecutive small subdiagonal elements.
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0;
          for (; m >= l; --m) {
            const double z = a[m][m];
            const double rr = sx - z;
            const double ss = sy - z;
            p = (rr * ss - sw) / a[m + 1][m] + a[m][m + 1];
            q = a[m + 1][m + 1] - z - rr - ss;
            r = a[m + 2][m + 1];
            const double scale = std::abs(p) + std::abs(q) + std::abs(r);
            p /= scale;
            q /= scale;
            r /= scale;
            if (m == l) break;
            const double u = std::abs(a[m][m - 1]) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a[m - 1][m - 1]) + std::abs(z) + std::abs(a[m + 1][m + 1]));
            if (u <= DBL_EPSILON * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a[i][i - 2] = 0.0;
            if (i != m + 2) a[i][i - 3] = 0.0;
          }

          // Double-shift QR sweep on rows/columns l..nn, starting at m.
          for (int k = m; k <= nn - 1; ++k) {
            double scale = 1.0;
            if (k != m) {
              p = a[k][k - 1];
              q = a[k + 1][k - 1];
              r = (k + 1 != nn) ? a[k + 2][k - 1] : 0.0;
              scale = std::abs(p) + std::abs(q) + std::abs(r);
              if (scale != 0.0) {
                p /= scale;
                q /= scale;
                r /= scale;
              }
            }
            const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a[k][k - 1] = -a[k][k - 1];
            } else {
              a[k][k - 1] = -s * scale;
            }
            p += s;
            const double hx = p / s;
            const double hy = q / s;
            const double hz = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double t = a[k][j] + q * a[k + 1][j];
              if (k + 1 != nn) {
                t += r * a[k + 2][j];
                a[k + 2][j] -= t * hz;
              }
              a[k + 1][j] -= t * hy;
              a[k][j] -= t * hx;
            }
            const int row_end = std::min(nn, k + 3);
            for (int i = l; i <= row_end; ++i) {
              double t = hx * a[i][k] + hy * a[i][k + 1];
              if (k + 1 != nn) {
                t += hz * a[i][k + 2];
                a[i][k + 2] -= t * r;
              }
              a[i][k + 1] -= t * q;
              a[i][k] -= t;
            }
          }
        }
      }
    } while (nn >= 0 && l < nn - 1);
  }
  return ev;
}

}  // namespace

NoConvergence::NoConvergence(std::vector<std::complex<double>> partial, int iterations)
    : Error(ErrorKind::no_convergence, "eigen4: QR iteration did not converge"),
      partial_(std::move(partial)),
      iterations_(iterations) {}

void sort_eigenvalues(Eigenvalues4& ev) {
  std::sort(ev.begin(), ev.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
}

Eigenvalues4 eigen4(const Matrix4& a, int& iterations) {
  for (const auto& row : a)
    for (double x : row)
      if (!std::isfinite(x)) throw ValidationError("matrix", "eigen4: non-finite matrix entry");
  Matrix4 h = a;
  to_hessenberg(h);
  Eigenvalues4 ev = hessenberg_qr(h, iterations);
  sort_eigenvalues(ev);
  return ev;
}

Eigenvalues4 eigen4(const Matrix4& a) {
  int iterations = 0;
  return eigen4(a, iterations);
}

double char_poly_residual(const Matrix4& a, std::complex<double> lambda) {
  using C = std::complex<double>;
  std::array<std::array<C, kN>, kN> m{};
  for (int i = 0; i < kN; ++i)
    for (int j = 0; j < kN; ++j) m[i][j] = a[i][j] - (i == j ? lambda : C{});
  C det = 1.0;
  for (int k = 0; k < kN; ++k) {
    int piv = k;
    for (int i = k + 1; i < kN; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (m[piv][k] == C{}) return 0.0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < kN; ++i) {
      const C f = m[i][k] / m[k][k];
      for (int j = k; j < kN; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return std::abs(det);
}

double determinant(const Matrix4& a) {
  Matrix4 m = a;
  double det = 1.0;
  for (int k = 0; k < kN; ++k) {
    int piv = k;
    for (int i = k + 1; i < kN; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (m[piv][k] == 0.0) return 0.0;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (int i = k + 1; i < kN; ++i) {
      const double f = m[i][k] / m[k][k];
      for (int j = k; j < kN; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

double trace(const Matrix4& a) { return a[0][0] + a[1][1] + a[2][2] + a[3][3]; }

double norm_inf(const Matrix4& a) {
  double best = 0.0;
  for (const auto& row : a) {
    double s = 0.0;
    for (double x : row) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

Vector4 real_eigenvector(const Matrix4& a, double lambda) {
  // LU of (A - mu I) with partial pivoting, mu nudged off lambda so the
  // factorisation stays finite; a few solves converge to the eigenvector.
  const double scale = std::max(norm_inf(a), 1.0);
  const double mu = lambda + 1e-10 * scale;
  Matrix4 lu = a;
  for (int i = 0; i < kN; ++i) lu[i][i] -= mu;
  std::array<int, kN> perm{0, 1, 2, 3};
  for (int k = 0; k < kN; ++k) {
    int piv = k;
    for (int i = k + 1; i < kN; ++i)
      if (std::abs(lu[i][k]) > std::abs(lu[piv][k])) piv = i;
    std::swap(lu[piv], lu[k]);
    std::swap(perm[piv], perm[k]);
    if (lu[k][k] == 0.0) lu[k][k] = DBL_EPSILON * scale;
    for (int i = k + 1; i < kN; ++i) {
      lu[i][k] /= lu[k][k];
      for (int j = k + 1; j < kN; ++j) lu[i][j] -= lu[i][k] * lu[k][j];
    }
  }

  Vector4 x{1.0, 1.0, 1.0, 1.0};
  for (int sweep = 0; sweep < 4; ++sweep) {
    Vector4 y{};
    for (int i = 0; i < kN; ++i) {
      double s = x[perm[i]];
      for (int j = 0; j < i; ++j) s -= lu[i][j] * y[j];
      y[i] = s;
    }
    for (int i = kN - 1; i >= 0; --i) {
      double s = y[i];
      for (int j = i + 1; j < kN; ++j) s -= lu[i][j] * y[j];
      y[i] = s / lu[i][i];
    }
    double n = 0.0;
    for (double c : y) n += c * c;
    n = std::sqrt(n);
    for (int i = 0; i < kN; ++i) x[i] = y[i] / n;
  }
  int big = 0;
  for (int i = 1; i < kN; ++i)
    if (std::abs(x[i]) > std::abs(x[big])) big = i;
  if (x[big] < 0.0)
    for (double& c : x) c = -c;
  return x;
}

}  // namespace ceslab
