#include "sptsim/fit.hpp"

#include <algorithm>
#include <cmath>

namespace sptsim {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& w) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("linear_fit: bad input");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double wi = w.empty() ? 1.0 : w[i];
    sw += wi;
    sx += wi * x[i];
    sy += wi * y[i];
    sxx += wi * x[i] * x[i];
    sxy += wi * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (det <= 0) throw NumericalError("linear_fit: degenerate abscissae");
  LinearFit f;
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sxx * sy - sx * sxy) / det;
  // Residual-scaled parameter errors.
  double chi2 = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double wi = w.empty() ? 1.0 : w[i];
    double r = y[i] - (f.slope * x[i] + f.intercept);
    chi2 += wi * r * r;
  }
  double dof = std::max<double>(1.0, double(x.size()) - 2.0);
  double s2 = chi2 / dof;
  f.slope_err = std::sqrt(s2 * sw / det);
  f.intercept_err = std::sqrt(s2 * sxx / det);
  return f;
}

FitResult levenberg_marquardt(const ResidualFunc& f, Eigen::VectorXd p, int n_residuals,
                              int max_iter, double tol) {
  const int np = int(p.size());
  Eigen::VectorXd r(n_residuals);
  Eigen::MatrixXd J(n_residuals, np);
  f(p, r, J);
  double chi2 = r.squaredNorm();
  double lambda = 1e-3;

  FitResult out;
  out.n_points = n_residuals;
  int it = 0;
  for (; it < max_iter; ++it) {
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd g = J.transpose() * r;
    Eigen::MatrixXd A = JtJ;
    A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-30);
    Eigen::VectorXd step = A.ldlt().solve(-g);
    Eigen::VectorXd p_new = p + step;

    Eigen::VectorXd r_new(n_residuals);
    Eigen::MatrixXd J_new(n_residuals, np);
    f(p_new, r_new, J_new);
    double chi2_new = r_new.squaredNorm();
    if (std::isfinite(chi2_new) && chi2_new <= chi2) {
      double rel = (chi2 - chi2_new) / std::max(chi2, 1e-300);
      p = p_new;
      r = r_new;
      J = J_new;
      chi2 = chi2_new;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < tol || step.cwiseAbs().maxCoeff() < tol * (1.0 + p.cwiseAbs().maxCoeff())) {
        out.converged = true;
        ++it;
        break;
      }
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }
  out.p = p;
  out.chi2 = chi2;
  out.iterations = it;

  Eigen::MatrixXd JtJ = J.transpose() * J;
  Eigen::MatrixXd cov = JtJ.completeOrthogonalDecomposition().pseudoInverse();
  out.cov = cov;
  return out;
}

namespace {

struct Points {
  std::vector<double> x, y, s;
};

// sigma = 0 entries get the smallest positive sigma (or 1).
Points weighted(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::vector<double>& sigmas) {
  if (xs.size() != ys.size() || (!sigmas.empty() && sigmas.size() != xs.size()))
    throw std::invalid_argument("fit_decay: size mismatch");
  Points pt;
  pt.x = xs;
  pt.y = ys;
  if (sigmas.empty()) {
    pt.s.assign(xs.size(), 1.0);
  } else {
    double smin = 0;
    for (double s : sigmas)
      if (s > 0 && (smin == 0 || s < smin)) smin = s;
    if (smin == 0) smin = 1.0;
    pt.s = sigmas;
    for (double& s : pt.s)
      if (s <= 0) s = smin;
  }
  return pt;
}

}  // namespace

FitResult fit_decay(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& sigmas, DecayModel model, double delta_fixed) {
  Points pt = weighted(xs, ys, sigmas);
  const int n = int(pt.x.size());
  if (n < 3) throw std::invalid_argument("fit_decay: need at least 3 points");

  auto loglin = [&](double offset, double& a0, double& k0) {
    // ln(y - offset) = ln a - k x on the positive part.
    std::vector<double> lx, ly;
    for (int i = 0; i < n; ++i)
      if (pt.y[i] - offset > 0) {
        lx.push_back(pt.x[i]);
        ly.push_back(std::log(pt.y[i] - offset));
      }
    if (lx.size() < 2) {
      a0 = std::max(1e-3, *std::max_element(pt.y.begin(), pt.y.end()) - offset);
      k0 = 1.0 / std::max(1e-12, pt.x.back() - pt.x.front());
      return;
    }
    LinearFit lf = linear_fit(lx, ly);
    a0 = std::exp(lf.intercept);
    k0 = std::max(1e-12, -lf.slope);
  };

  ResidualFunc f;
  Eigen::VectorXd p0;

  switch (model) {
    case DecayModel::Exp: {
      double a0, k0;
      loglin(0.0, a0, k0);
      p0 = Eigen::Vector2d(a0, 1.0 / k0);
      f = [pt, n](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        for (int i = 0; i < n; ++i) {
          double e = std::exp(-pt.x[i] / p[1]);
          r[i] = (p[0] * e - pt.y[i]) / pt.s[i];
          J(i, 0) = e / pt.s[i];
          J(i, 1) = p[0] * e * pt.x[i] / (p[1] * p[1]) / pt.s[i];
        }
      };
      break;
    }
    case DecayModel::ExpPlateau: {
      // Plateau from the tail, slope from the log-linearized remainder.
      int tail = std::max(1, n / 5);
      double c0 = 0;
      for (int i = n - tail; i < n; ++i) c0 += pt.y[i];
      c0 /= tail;
      double a0, k0;
      loglin(c0, a0, k0);
      p0 = Eigen::Vector3d(a0, 1.0 / k0, c0);
      f = [pt, n](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        for (int i = 0; i < n; ++i) {
          double e = std::exp(-(pt.x[i] - 1.0) / p[1]);
          r[i] = (p[0] * e + p[2] - pt.y[i]) / pt.s[i];
          J(i, 0) = e / pt.s[i];
          J(i, 1) = p[0] * e * (pt.x[i] - 1.0) / (p[1] * p[1]) / pt.s[i];
          J(i, 2) = 1.0 / pt.s[i];
        }
      };
      break;
    }
    case DecayModel::PowerExp: {
      // ln y + delta ln x = ln a - b x is linear.
      std::vector<double> lx, ly;
      for (int i = 0; i < n; ++i)
        if (pt.y[i] > 0 && pt.x[i] > 0) {
          lx.push_back(pt.x[i]);
          ly.push_back(std::log(pt.y[i]) + delta_fixed * std::log(pt.x[i]));
        }
      double a0 = 1.0, b0 = 0.1;
      if (lx.size() >= 2) {
        LinearFit lf = linear_fit(lx, ly);
        a0 = std::exp(lf.intercept);
        b0 = std::max(1e-12, -lf.slope);
      }
      p0 = Eigen::Vector2d(a0, b0);
      double delta = delta_fixed;
      f = [pt, n, delta](const Eigen::VectorXd& p, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        for (int i = 0; i < n; ++i) {
          double base = std::pow(pt.x[i], -delta) * std::exp(-p[1] * pt.x[i]);
          r[i] = (p[0] * base - pt.y[i]) / pt.s[i];
          J(i, 0) = base / pt.s[i];
          J(i, 1) = -p[0] * base * pt.x[i] / pt.s[i];
        }
      };
      break;
    }
  }

  // Bounded restarts with perturbed initialization.
  const double scales[] = {1.0, 0.5, 2.0, 0.25, 4.0};
  FitResult best;
  for (double sc : scales) {
    Eigen::VectorXd p = p0;
    for (int j = 0; j < p.size(); ++j) p[j] *= sc;
    FitResult r = levenberg_marquardt(f, p, n);
    if (r.converged && (!best.converged || r.chi2 < best.chi2)) best = r;
    if (best.converged && sc == 1.0) break;
  }
  if (!best.converged) throw NumericalError("fit_decay failed to converge");

  if (sigmas.empty()) {
    // Unit weights: scale covariance by the reduced chi^2.
    double dof = std::max(1, n - int(best.p.size()));
    best.cov *= best.chi2 / dof;
  }
  return best;
}

}  // namespace sptsim
