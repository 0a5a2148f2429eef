#include "decaylab/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <thread>

namespace decaylab {

namespace {

void require_grid(const std::vector<double>& tau_grid) {
  if (tau_grid.empty()) throw InvalidParameter("empty time grid");
  if (!(tau_grid.front() >= 0.0))
    throw InvalidParameter("time grid must be nonnegative");
  for (size_t i = 0; i + 1 < tau_grid.size(); ++i)
    if (!(tau_grid[i] < tau_grid[i + 1]))
      throw InvalidParameter("time grid must be strictly ascending");
}

// Data-parallel map over grid indices; results land in grid order.
void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  const size_t workers =
      std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string config_fingerprint(const QuadConfig& cfg) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "rel=%.3e abs=%.3e sub=%d mode=%d",
                cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions,
                static_cast<int>(cfg.mode));
  return buf;
}

// FNV-1a over a canonical parameter string.
std::string provenance_tag(const std::string& params, const QuadConfig& cfg) {
  const std::string text = params + "|" + config_fingerprint(cfg);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf) + " " + config_fingerprint(cfg);
}

std::string mdd_fingerprint(const MddSpec& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "a=%.17g xi0=%.17g w=%.17g xm=%.17g",
                m.alpha, m.xi0, m.weight, m.xi_max);
  return buf;
}

template <typename AmpFn>
SeriesResult run_series(const AmpFn& amp_at, const std::string& params,
                        const std::vector<double>& tau_grid,
                        const QuadConfig& cfg) {
  require_grid(tau_grid);
  SeriesResult out;
  out.tau = tau_grid;
  out.amp.resize(tau_grid.size());
  out.prob.resize(tau_grid.size());
  parallel_for(tau_grid.size(), [&](size_t i) {
    const std::complex<double> a = amp_at(tau_grid[i]);
    out.amp[i] = a;
    out.prob[i] = std::norm(a);
  });
  out.provenance = provenance_tag(params, cfg);
  return out;
}

}  // namespace

void TwoMassState::validate() const {
  mdd1.validate();
  mdd2.validate();
  if (!(w1 > 0.0 && w1 < 1.0 && w2 > 0.0 && w2 < 1.0))
    throw InvalidParameter("superposition weights must lie in (0,1)");
  if (std::abs(w1 + w2 - 1.0) > 1e-12)
    throw InvalidParameter("superposition weights must sum to 1");
}

std::complex<double> amp_single(const MddSpec& mdd, double p, double tau,
                                const QuadConfig& cfg) {
  if (!(p >= 0.0)) throw InvalidParameter("momentum must be nonnegative");
  return integrate({mdd, p / mdd.scale_mass, tau}, cfg);
}

std::complex<double> amp_two(const TwoMassState& state, double p, double tau,
                             const QuadConfig& cfg) {
  state.validate();
  return state.w1 * amp_single(state.mdd1, p, tau, cfg) +
         state.w2 * amp_single(state.mdd2, p, tau, cfg);
}

double prob_two(const TwoMassState& state, double p, double tau,
                const QuadConfig& cfg) {
  state.validate();
  const std::complex<double> a1 = amp_single(state.mdd1, p, tau, cfg);
  const std::complex<double> a2 = amp_single(state.mdd2, p, tau, cfg);
  return state.w1 * state.w1 * std::norm(a1) +
         state.w2 * state.w2 * std::norm(a2) +
         2.0 * state.w1 * state.w2 * std::real(a1 * std::conj(a2));
}

SeriesResult series(const TwoMassState& state, double p,
                    const std::vector<double>& tau_grid,
                    const QuadConfig& cfg) {
  state.validate();
  char head[96];
  std::snprintf(head, sizeof head, "two-mass w1=%.17g p=%.17g ", state.w1, p);
  const std::string params = std::string(head) + mdd_fingerprint(state.mdd1) +
                             " / " + mdd_fingerprint(state.mdd2);
  return run_series(
      [&](double tau) { return amp_two(state, p, tau, cfg); }, params,
      tau_grid, cfg);
}

SeriesResult series(const MddSpec& mdd, double p,
                    const std::vector<double>& tau_grid,
                    const QuadConfig& cfg) {
  mdd.validate();
  char head[64];
  std::snprintf(head, sizeof head, "single-mass p=%.17g ", p);
  return run_series(
      [&](double tau) { return amp_single(mdd, p, tau, cfg); },
      std::string(head) + mdd_fingerprint(mdd), tau_grid, cfg);
}

}  // namespace decaylab
