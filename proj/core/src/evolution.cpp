#include "altpol/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace altpol {

namespace {

constexpr Complex kMinusI{0.0, -1.0};

/// Generator used by the stepper, stored as nonzero triplets:
///   L[rho] = -i (K rho - rho K^dag) + sum_c 2 r_c J_c rho J_c^dag,
///   K = H - i D.
/// The stepped states are Hermitian, so rho K^dag = (K rho)^dag. At these
/// dimensions explicit loops over the few nonzeros beat general sparse products.
class SteppingGenerator {
 public:
  struct Entry {
    int row;
    int col;
    Complex value;
  };

  explicit SteppingGenerator(const MasterEquation& eq) : dim_(eq.space.total_dim()), k_rho_(dim_, dim_) {
    k0_ = entries(eq.h_static + eq.h_cavity + kMinusI * eq.dissipator.damping());
    pump_ = entries(eq.h_pump);
    for (const auto& c : eq.dissipator.channels()) {
      if (c.rate == 0.0) continue;
      jumps_.push_back(entries(c.jump));
      weights_.push_back(2.0 * c.rate);
    }
  }

  void apply(double envelope, const DensityMatrix& rho, DensityMatrix& out) {
    k_rho_.setZero();
    multiply_add(k0_, Complex(1.0, 0.0), rho);
    if (envelope != 0.0) multiply_add(pump_, Complex(envelope, 0.0), rho);
    out.noalias() = kMinusI * k_rho_;
    out.noalias() -= kMinusI * k_rho_.adjoint();
    for (std::size_t c = 0; c < jumps_.size(); ++c) {
      const double w = weights_[c];
      for (const Entry& a : jumps_[c])
        for (const Entry& b : jumps_[c])
          out(a.row, b.row) += w * a.value * rho(a.col, b.col) * std::conj(b.value);
    }
  }

 private:
  static std::vector<Entry> entries(const OperatorMatrix& m) {
    std::vector<Entry> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        if (m(i, j) != Complex(0.0, 0.0))
          out.push_back({static_cast<int>(i), static_cast<int>(j), m(i, j)});
    return out;
  }

  void multiply_add(const std::vector<Entry>& op, Complex scale, const DensityMatrix& rho) {
    for (Eigen::Index j = 0; j < dim_; ++j)
      for (const Entry& e : op) k_rho_(e.row, j) += scale * e.value * rho(e.col, j);
  }

  Eigen::Index dim_;
  DensityMatrix k_rho_;
  std::vector<Entry> k0_;
  std::vector<Entry> pump_;
  std::vector<std::vector<Entry>> jumps_;
  std::vector<double> weights_;
};

struct DiagonalWeights {
  Eigen::VectorXd leak_plus;
  Eigen::VectorXd leak_minus;
  Eigen::VectorXd sink;
};

double weighted_diag(const Eigen::VectorXd& w, const DensityMatrix& rho) {
  return w.dot(rho.diagonal().real());
}

}  // namespace

double default_tail(Frequency kappa) { return 5.0 / (2.0 * kappa.angular()); }

double default_window(const PulseShape& pulse, Frequency kappa) {
  return pulse.duration + default_tail(kappa);
}

int Trajectory::level_index(std::string_view label) const {
  auto it = std::find(levels.begin(), levels.end(), label);
  if (it == levels.end()) throw std::invalid_argument("trajectory has no level '" + std::string(label) + "'");
  return static_cast<int>(it - levels.begin());
}

double Trajectory::population(std::size_t step, std::string_view level) const {
  return populations(static_cast<Eigen::Index>(step), level_index(level));
}

Trajectory integrate_master(const MasterEquation& eq, const DensityMatrix& rho0, const PulseShape& pulse,
                            const IntegratorOptions& options) {
  const int dim = eq.space.total_dim();
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("integrate_master: initial state has wrong dimension");
  if (!(options.dt > 0.0)) throw std::invalid_argument("integrate_master: dt must be > 0");
  if (options.dt > options.dt_max * (1.0 + 1e-12))
    throw std::invalid_argument("integrate_master: dt exceeds dt_max");
  if (options.store_every < 1) throw std::invalid_argument("integrate_master: store_every must be >= 1");
  pulse.validate();

  const double window = options.window > 0.0 ? options.window : default_window(pulse, eq.kappa);
  const double dt = options.dt;
  const auto n_steps = static_cast<std::size_t>(std::ceil(window / dt - 1e-9));

  SteppingGenerator gen(eq);
  const double two_kappa = 2.0 * eq.kappa.angular();
  const DiagonalWeights weights{two_kappa * photon_numbers(eq.space, Slot::sigma_plus_mode),
                                two_kappa * photon_numbers(eq.space, Slot::sigma_minus_mode),
                                eq.dissipator.sink_weights()};
  const Eigen::VectorXd n_plus_diag = photon_numbers(eq.space, Slot::sigma_plus_mode);
  const Eigen::VectorXd n_minus_diag = photon_numbers(eq.space, Slot::sigma_minus_mode);
  const int n_levels = eq.space.n_levels();
  const int per_level = eq.space.fock_dim() * eq.space.fock_dim();

  Trajectory traj;
  traj.levels = eq.space.levels();
  traj.dt = dt;
  traj.time.reserve(n_steps + 1);
  traj.populations.resize(static_cast<Eigen::Index>(n_steps + 1), n_levels);

  double leak_p = 0.0, leak_m = 0.0, sink = 0.0;

  auto record = [&](std::size_t step, double t, const DensityMatrix& rho) {
    const Eigen::VectorXd diag = rho.diagonal().real();
    traj.time.push_back(t);
    traj.envelope.push_back(pulse_envelope(pulse, t));
    traj.n_plus.push_back(n_plus_diag.dot(diag));
    traj.n_minus.push_back(n_minus_diag.dot(diag));
    traj.trace.push_back(diag.sum());
    for (int l = 0; l < n_levels; ++l)
      traj.populations(static_cast<Eigen::Index>(step), l) = diag.segment(l * per_level, per_level).sum();
    traj.leaked_plus.push_back(leak_p);
    traj.leaked_minus.push_back(leak_m);
    traj.sink_loss.push_back(sink);

    const bool keep = step % static_cast<std::size_t>(options.store_every) == 0 || step == n_steps;
    if (!keep) return;
    if (options.check_physicality) {
      const PhysicalityReport r = inspect_density(rho);
      if (!is_physical(r, options.tolerance)) {
        std::ostringstream msg;
        msg << "integrate_master: state became unphysical at t = " << t << " us (trace " << r.trace_real
            << ", min eigenvalue " << r.min_eigenvalue << ", hermiticity " << r.hermiticity_error
            << "); reduce dt (currently " << dt << " us)";
        throw IntegrationError(msg.str());
      }
    }
    traj.snapshots.push_back({step, rho});
  };

  DensityMatrix rho = rho0;
  DensityMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), y(dim, dim);
  record(0, 0.0, rho);

  auto fluxes = [&](const DensityMatrix& s, double& fp, double& fm, double& fs) {
    fp = weighted_diag(weights.leak_plus, s);
    fm = weighted_diag(weights.leak_minus, s);
    fs = weighted_diag(weights.sink, s);
  };

  for (std::size_t step = 0; step < n_steps; ++step) {
    const double t = static_cast<double>(step) * dt;
    const double s_start = pulse_envelope(pulse, t);
    const double s_mid = pulse_envelope(pulse, t + 0.5 * dt);
    const double s_end = pulse_envelope(pulse, t + dt);

    double p1, m1, q1, p2, m2, q2, p3, m3, q3, p4, m4, q4;
    fluxes(rho, p1, m1, q1);
    gen.apply(s_start, rho, k1);
    y = rho + (0.5 * dt) * k1;
    fluxes(y, p2, m2, q2);
    gen.apply(s_mid, y, k2);
    y = rho + (0.5 * dt) * k2;
    fluxes(y, p3, m3, q3);
    gen.apply(s_mid, y, k3);
    y = rho + dt * k3;
    fluxes(y, p4, m4, q4);
    gen.apply(s_end, y, k4);

    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    leak_p += dt / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
    leak_m += dt / 6.0 * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
    sink += dt / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);

    record(step + 1, static_cast<double>(step + 1) * dt, rho);
  }
  traj.final_state = rho;
  return traj;
}

}  // namespace altpol
