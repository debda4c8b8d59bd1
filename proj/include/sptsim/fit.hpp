#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sptsim/params.hpp"

namespace sptsim {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_err = 0.0;
  double intercept_err = 0.0;
};

// Weighted least-squares line. Weights default to 1.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& w = {});

struct FitResult {
  Eigen::VectorXd p;
  Eigen::MatrixXd cov;
  double chi2 = 0.0;
  int n_points = 0;
  int iterations = 0;
  bool converged = false;
};

enum class DecayModel {
  Exp,         // a * exp(-x / tau),            p = (a, tau)
  ExpPlateau,  // a * exp(-(x-1) / xi) + c,     p = (a, xi, c)
  PowerExp,    // a * x^(-delta) * exp(-b x),   p = (a, b), delta fixed
};

// Nonlinear least squares (Levenberg-Marquardt, analytic Jacobians).
// Initialization: log-linearized regression per model; bounded restarts on
// non-convergence, then NumericalError. sigmas may be empty (unit weights;
// covariance then scaled by the reduced chi^2).
FitResult fit_decay(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<double>& sigmas, DecayModel model,
                    double delta_fixed = 0.0);

// Generic LM core, exposed for tests. residual(p, r, J) fills r and J.
using ResidualFunc =
    std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, Eigen::MatrixXd&)>;
FitResult levenberg_marquardt(const ResidualFunc& f, Eigen::VectorXd p0, int n_residuals,
                              int max_iter = 200, double tol = 1e-12);

}  // namespace sptsim
