#include "hamsim/budgets.hpp"

#include <stdexcept>

namespace hamsim {

namespace {

void check_args(std::size_t n, std::size_t k, double multiplier) {
  if (n < 16) throw std::invalid_argument("n must be at least 16");
  if (k == 0) throw std::invalid_argument("K must be positive");
  if (!(multiplier > 0)) throw std::invalid_argument("multiplier must be positive");
}

std::uint64_t floor_u64(long double x) {
  return static_cast<std::uint64_t>(std::floor(x));
}

Budgets base(std::size_t n, std::size_t k, double multiplier) {
  check_args(n, k, multiplier);
  Budgets b;
  b.n = n;
  b.k = k;
  b.multiplier = multiplier;
  const long double nn = static_cast<long double>(n);
  b.log_n = std::log(nn);
  b.loglog_n = std::log(b.log_n);
  b.n_prime = static_cast<std::size_t>(std::ceil(nn / b.loglog_n));
  b.phase1_edges = 10 * b.n_prime;
  b.blue_threshold = static_cast<double>(1e-6L * b.n_prime);
  b.path_cap = static_cast<double>(nn / (b.loglog_n * b.loglog_n));
  b.end_cap = static_cast<double>(nn / std::pow(b.log_n, 5.0L));
  b.fanout_cap = static_cast<double>(std::pow(b.log_n, 0.8L));
  b.long_path_threshold = static_cast<double>(0.5L * b.log_n);
  return b;
}

}  // namespace

Budgets compute_budgets(std::size_t n, std::size_t k, double multiplier) {
  Budgets b = base(n, k, multiplier);
  const long double nn = static_cast<long double>(n);
  const long double half_log_over_k = b.log_n / (2.0L * k);
  b.t_eps = floor_u64(multiplier * 50.0L * (1.0L + half_log_over_k) * nn / b.loglog_n);
  b.t1 = b.t_eps;
  b.t2 = b.t1 + b.t_eps + n;
  b.t3 = b.t2 + b.t_eps;
  b.t4 = b.t3 + b.t_eps + floor_u64(nn * half_log_over_k);
  b.t5 = b.t4 + b.t_eps;
  return b;
}

Budgets compute_matching_budgets(std::size_t n, std::size_t k, double multiplier) {
  Budgets b = base(n, k, multiplier);
  const long double nn = static_cast<long double>(n);
  const long double half_log_over_k = b.log_n / (2.0L * k);
  b.t_eps = floor_u64(multiplier * 50.0L * (0.5L + half_log_over_k) * nn / b.loglog_n);
  b.t1 = b.t_eps;
  b.t2 = b.t1 + b.t_eps + (n + 1) / 2;
  b.t3 = b.t2 + b.t_eps;
  b.t4 = b.t3 + b.t_eps + floor_u64(nn * half_log_over_k);
  b.t5 = b.t4 + b.t_eps;
  return b;
}

long double hamilton_round_bound(std::size_t n, std::size_t k, double multiplier) {
  check_args(n, k, multiplier);
  const long double nn = static_cast<long double>(n);
  const long double ll = std::log(std::log(nn));
  return (1.0L + 250.0L * multiplier / ll) * (1.0L + std::log(nn) / (2.0L * k)) * nn;
}

long double matching_round_bound(std::size_t n, std::size_t k, double multiplier) {
  check_args(n, k, multiplier);
  const long double nn = static_cast<long double>(n);
  const long double ll = std::log(std::log(nn));
  return (1.0L + 250.0L * multiplier / ll) * (0.5L + std::log(nn) / (2.0L * k)) * nn;
}

std::size_t hamilton_edge_bound(std::size_t n) {
  return n + 11 * compute_budgets(n, 1).n_prime;
}

long double matching_edge_bound(std::size_t n) {
  check_args(n, 1, 1.0);
  const long double nn = static_cast<long double>(n);
  return (0.5L + 11.0L / std::log(std::log(nn))) * nn;
}

long double reference_lower_bound(std::size_t n, std::size_t k) {
  check_args(n, k, 1.0);
  const long double nn = static_cast<long double>(n);
  return (1.0L + std::log(nn) / (2.0L * k)) * nn;
}

}  // namespace hamsim
