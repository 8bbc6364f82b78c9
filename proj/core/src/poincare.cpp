#include "qqft/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qqft/parallel.hpp"
#include "qqft/protocol.hpp"

namespace qqft {
namespace {

std::size_t mod(std::int64_t value, std::size_t size) {
  const auto n = static_cast<std::int64_t>(size);
  return static_cast<std::size_t>(((value % n) + n) % n);
}

void check_lattice_args(std::size_t size, int gamma) {
  if (size < 2) throw std::invalid_argument("Lorentz lattice: N must be >= 2");
  if (gamma < 2) throw std::invalid_argument("Lorentz lattice: gamma must be >= 2");
}

using Point = std::pair<std::size_t, std::size_t>;

std::vector<Point> momentum_orbit(std::size_t k, std::size_t j, int gamma, std::size_t size,
                                  MomentumAction action) {
  std::vector<Point> orbit{{k, j}};
  for (Point p = momentum_action(k, j, gamma, size, action); p != orbit.front();
       p = momentum_action(p.first, p.second, gamma, size, action)) {
    orbit.push_back(p);
  }
  return orbit;
}

std::string describe_orbits(std::size_t size, int gamma, MomentumAction action) {
  std::vector<char> seen(size * size, 0);
  std::vector<std::size_t> lengths;
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t j = 0; j < size; ++j) {
      if (seen[k * size + j]) continue;
      const auto orbit = momentum_orbit(k, j, gamma, size, action);
      for (const auto& [a, b] : orbit) seen[a * size + b] = 1;
      lengths.push_back(orbit.size());
    }
  }
  std::sort(lengths.begin(), lengths.end());
  std::ostringstream out;
  out << lengths.size() << " orbits, lengths";
  for (std::size_t len : lengths) out << ' ' << len;
  return out.str();
}

class DispersionSearch {
 public:
  DispersionSearch(std::size_t size, int gamma, MomentumAction action, std::size_t node_limit)
      : size_(size), gamma_(gamma), action_(action), node_limit_(node_limit),
        table_(size, kUnset) {}

  bool run() { return descend(); }
  bool exhausted() const { return nodes_ > node_limit_; }
  const std::vector<std::size_t>& table() const { return table_; }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool descend() {
    if (++nodes_ > node_limit_) return false;
    const auto free = std::find(table_.begin(), table_.end(), kUnset);
    if (free == table_.end()) {
      return std::any_of(table_.begin(), table_.end(), [](std::size_t v) { return v != 0; });
    }
    const auto k = static_cast<std::size_t>(free - table_.begin());
    for (std::size_t j = 0; j < size_; ++j) {
      // Odd symmetry: (k, j) and (-k, -j) enter together.
      std::vector<Point> points = momentum_orbit(k, j, gamma_, size_, action_);
      const Point mirror{(size_ - k) % size_, (size_ - j) % size_};
      if (std::find(points.begin(), points.end(), mirror) == points.end()) {
        const auto extra = momentum_orbit(mirror.first, mirror.second, gamma_, size_, action_);
        points.insert(points.end(), extra.begin(), extra.end());
      }
      bool ok = true;
      std::vector<std::size_t> placed;
      for (const auto& [kk, jj] : points) {
        if (table_[kk] != kUnset) {
          ok = false;
          break;
        }
        table_[kk] = jj;
        placed.push_back(kk);
      }
      if (ok && descend()) return true;
      for (std::size_t kk : placed) table_[kk] = kUnset;
      if (exhausted()) return false;
    }
    return false;
  }

  std::size_t size_;
  int gamma_;
  MomentumAction action_;
  std::size_t node_limit_;
  std::size_t nodes_ = 0;
  std::vector<std::size_t> table_;
};

struct MeanStderr {
  double mean = 0.0;
  double err = 0.0;
};

MeanStderr mean_stderr(const double* first, std::size_t count) {
  MeanStderr out;
  if (count == 0) return out;
  out.mean = std::accumulate(first, first + count, 0.0) / static_cast<double>(count);
  if (count < 2) return out;
  double ss = 0.0;
  for (std::size_t i = 0; i < count; ++i) ss += (first[i] - out.mean) * (first[i] - out.mean);
  out.err = std::sqrt(ss / static_cast<double>(count - 1) / static_cast<double>(count));
  return out;
}

}  // namespace

std::pair<std::size_t, std::size_t> lorentz_map(std::size_t m, std::size_t n, int gamma,
                                                std::size_t size) {
  check_lattice_args(size, gamma);
  if (m >= size || n >= size) throw std::out_of_range("lorentz_map: point outside the lattice");
  const auto g = static_cast<std::int64_t>(gamma);
  const auto mm = static_cast<std::int64_t>(m);
  const auto nn = static_cast<std::int64_t>(n);
  return {mod(g * mm + nn, size), mod((g * g - 1) * mm + g * nn, size)};
}

LorentzLattice equivalence_classes(std::size_t size, int gamma) {
  check_lattice_args(size, gamma);
  LorentzLattice lattice;
  lattice.n = size;
  lattice.gamma = gamma;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  lattice.class_of.assign(size * size, kNone);
  for (std::size_t m = 0; m < size; ++m) {
    for (std::size_t n = 0; n < size; ++n) {
      if (lattice.class_of[m * size + n] != kNone) continue;
      const std::size_t id = lattice.classes.size();
      auto& members = lattice.classes.emplace_back();
      Point p{m, n};
      do {
        lattice.class_of[p.first * size + p.second] = id;
        members.push_back(p);
        p = lorentz_map(p.first, p.second, gamma, size);
      } while (p != Point{m, n});
    }
  }
  return lattice;
}

std::pair<std::size_t, std::size_t> momentum_action(std::size_t k, std::size_t j, int gamma,
                                                    std::size_t size, MomentumAction action) {
  check_lattice_args(size, gamma);
  const auto g = static_cast<std::int64_t>(gamma);
  const auto kk = static_cast<std::int64_t>(k);
  const auto jj = static_cast<std::int64_t>(j);
  if (action == MomentumAction::kTranspose) {
    return {mod(g * kk + jj, size), mod((g * g - 1) * kk + g * jj, size)};
  }
  return {mod(g * kk + (g * g - 1) * jj, size), mod(kk + g * jj, size)};
}

double Dispersion::energy(std::size_t k) const {
  return kTwoPi * static_cast<double>(j.at(k)) / static_cast<double>(n);
}

bool Dispersion::graph_invariant() const {
  if (j.size() != n) return false;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [k2, j2] = momentum_action(k, j[k], gamma, n, action);
    if (j[k2] != j2) return false;
  }
  return true;
}

bool Dispersion::odd() const {
  for (std::size_t k = 0; k < n; ++k) {
    if (j[(n - k) % n] != (n - j[k]) % n) return false;
  }
  return true;
}

Dispersion build_dispersion(std::size_t size, int gamma, MomentumAction action,
                            std::size_t node_limit) {
  check_lattice_args(size, gamma);
  DispersionSearch search(size, gamma, action, node_limit);
  if (!search.run()) {
    throw DispersionNotFoundError(
        std::string("build_dispersion: ") +
        (search.exhausted() ? "node limit reached" : "no nontrivial odd dispersion") + " for N=" +
        std::to_string(size) + ", gamma=" + std::to_string(gamma) + " (" +
        describe_orbits(size, gamma, action) + ")");
  }
  return Dispersion{size, gamma, action, search.table()};
}

PoincareCrystal::PoincareCrystal(Dispersion dispersion)
    : dispersion_(std::move(dispersion)), transform_(build_qqft(dispersion_.n)) {
  if (dispersion_.j.size() != dispersion_.n) {
    throw std::invalid_argument("PoincareCrystal: dispersion table has the wrong length");
  }
}

std::vector<Matrix> PoincareCrystal::evolve(const Matrix& forward, const Matrix& inverse) const {
  const std::size_t size = dispersion_.n;
  std::vector<Matrix> out;
  out.reserve(size);
  Vector phases(static_cast<Eigen::Index>(size));
  for (std::size_t m = 0; m < size; ++m) {
    for (std::size_t k = 0; k < size; ++k) {
      // exp(-i E_k m tau) with the exponent reduced mod N.
      const std::size_t e = (dispersion_.j[k] * m) % size;
      phases(static_cast<Eigen::Index>(k)) =
          std::polar(1.0, -kTwoPi * static_cast<double>(e) / static_cast<double>(size));
    }
    out.push_back(forward * phases.asDiagonal() * inverse);
  }
  return out;
}

std::vector<Matrix> PoincareCrystal::evolution(const NoiseModel& noise) const {
  return evolve(transform_.apply(noise, forward_channel(0), Direction::kForward),
                transform_.apply(noise, adjoint_channel(0), Direction::kAdjoint));
}

std::vector<Matrix> PoincareCrystal::exact_evolution() const {
  const Matrix omega = dft_matrix(dispersion_.n);
  return evolve(omega, omega.adjoint());
}

GreensResult PoincareCrystal::greens(const NoiseModel& noise) const {
  return greens_from_evolution(evolution(noise));
}

GreensResult PoincareCrystal::exact_greens() const {
  return greens_from_evolution(exact_evolution());
}

GreensResult greens_from_evolution(const std::vector<Matrix>& evolution) {
  const std::size_t size = evolution.size();
  GreensResult out;
  out.greens.resize(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  out.probability.n = size;
  out.probability.values.assign(size * size * size, 0.0);
  for (std::size_t m = 0; m < size; ++m) {
    const Matrix& u = evolution[m];
    if (static_cast<std::size_t>(u.rows()) != size || u.rows() != u.cols()) {
      throw DimensionError("greens_from_evolution: expected N matrices of size N x N");
    }
    const auto col = static_cast<Eigen::Index>(m);
    out.greens.col(col) = Complex{0.0, -1.0} * u.col(0);
    for (std::size_t n1 = 0; n1 < size; ++n1) {
      for (std::size_t n = 0; n < size; ++n) {
        out.probability.at(n1, m, n) =
            std::norm(u(static_cast<Eigen::Index>((n1 + n) % size), static_cast<Eigen::Index>(n1)));
      }
    }
  }
  return out;
}

double s_lorentz(const ProbabilityTensor& p, const LorentzLattice& lattice) {
  const std::size_t size = lattice.n;
  if (p.n != size || p.values.size() != size * size * size) {
    throw DimensionError("s_lorentz: tensor does not match the lattice");
  }
  double total = 0.0;
  for (const auto& members : lattice.classes) {
    double mean = 0.0;
    for (std::size_t n1 = 0; n1 < size; ++n1) {
      for (const auto& [m, n] : members) mean += p.at(n1, m, n);
    }
    mean /= static_cast<double>(size * members.size());
    for (std::size_t n1 = 0; n1 < size; ++n1) {
      for (const auto& [m, n] : members) {
        const double d = p.at(n1, m, n) - mean;
        total += d * d;
      }
    }
  }
  return std::sqrt(total / static_cast<double>(size * size * size));
}

double s_total(const ProbabilityTensor& noisy, const ProbabilityTensor& clean) {
  if (noisy.n != clean.n || noisy.values.size() != clean.values.size()) {
    throw DimensionError("s_total: tensor shapes differ");
  }
  if (noisy.values.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < noisy.values.size(); ++i) {
    const double d = noisy.values[i] - clean.values[i];
    total += d * d;
  }
  return std::sqrt(total / static_cast<double>(noisy.values.size()));
}

Dispersion build_validated_dispersion(std::size_t size, int gamma, double tolerance) {
  const LorentzLattice lattice = equivalence_classes(size, gamma);
  std::string report;
  for (MomentumAction action : {MomentumAction::kTranspose, MomentumAction::kExchanged}) {
    try {
      Dispersion d = build_dispersion(size, gamma, action);
      const double s = s_lorentz(PoincareCrystal(d).exact_greens().probability, lattice);
      if (s < tolerance) return d;
      report += " candidate S_L=" + std::to_string(s) + ";";
    } catch (const DispersionNotFoundError& e) {
      report += std::string(" ") + e.what() + ";";
    }
  }
  throw DispersionNotFoundError("build_validated_dispersion: no Lorentz-invariant dispersion:" +
                                report);
}

std::vector<SymmetryRow> symmetry_noise_sweep(const PoincareCrystal& crystal,
                                              const LorentzLattice& lattice,
                                              const std::vector<double>& sigmas,
                                              std::size_t realizations, std::uint64_t seed,
                                              std::size_t workers) {
  if (realizations == 0) throw std::invalid_argument("symmetry_noise_sweep: need realizations");
  const ProbabilityTensor clean = crystal.greens(NoiseModel::none()).probability;
  const std::size_t total = sigmas.size() * realizations;
  std::vector<double> sl(total);
  std::vector<double> sp(total);
  parallel_for(total, workers, [&](std::size_t task) {
    const std::size_t s = task / realizations;
    const std::size_t r = task % realizations;
    const ProbabilityTensor p = crystal.greens(NoiseModel{sigmas[s], seed, r}).probability;
    sl[task] = s_lorentz(p, lattice);
    sp[task] = s_total(p, clean);
  });
  std::vector<SymmetryRow> rows;
  for (std::size_t s = 0; s < sigmas.size(); ++s) {
    const auto l = mean_stderr(sl.data() + s * realizations, realizations);
    const auto t = mean_stderr(sp.data() + s * realizations, realizations);
    rows.push_back(SymmetryRow{sigmas[s], l.mean, l.err, t.mean, t.err, realizations});
  }
  return rows;
}

}  // namespace qqft
