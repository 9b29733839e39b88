#include "genpf/system.hpp"

#include "genpf/error.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace genpf {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, const std::string& text) {
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  h ^= 0xff;
  h *= kFnvPrime;
}

std::uint64_t fingerprint_of(const Matrix<Rational>& s, const Matrix<Rational>& r) {
  std::uint64_t h = kFnvOffset;
  fnv_mix(h, std::to_string(s.rows()) + "x" + std::to_string(s.cols()));
  for (const Matrix<Rational>* m : {&s, &r}) {
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j) fnv_mix(h, to_string((*m)(i, j)));
  }
  return h;
}

}  // namespace

GainSystem::GainSystem(Matrix<Rational> supporter_gains, Matrix<Rational> repressor_gains)
    : supporter_gains_(std::move(supporter_gains)), repressor_gains_(std::move(repressor_gains)) {
  if (supporter_gains_.rows() != repressor_gains_.rows() ||
      supporter_gains_.cols() != repressor_gains_.cols()) {
    throw std::invalid_argument("supporter and repressor gain matrices differ in shape");
  }
  const std::size_t n = supporter_gains_.rows();
  const std::size_t m = supporter_gains_.cols();
  supporters_.resize(n);
  repressors_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (supporter_gains_(i, j) > 0) supporters_[i].push_back(j);
      if (repressor_gains_(i, j) > 0) repressors_[i].push_back(j);
    }
  }
  fingerprint_ = fingerprint_of(supporter_gains_, repressor_gains_);
}

GainSystem GainSystem::from_signed(const Matrix<Rational>& gains) {
  Matrix<Rational> s(gains.rows(), gains.cols());
  Matrix<Rational> r(gains.rows(), gains.cols());
  for (std::size_t i = 0; i < gains.rows(); ++i) {
    for (std::size_t j = 0; j < gains.cols(); ++j) {
      const Rational& g = gains(i, j);
      if (g > 0) s(i, j) = g;
      if (g < 0) r(i, j) = -g;
    }
  }
  return GainSystem(std::move(s), std::move(r));
}

Matrix<double> GainSystem::supporter_gains_f() const {
  return supporter_gains_.map<double>([](const Rational& q) { return q.get_d(); });
}

Matrix<double> GainSystem::repressor_gains_f() const {
  return repressor_gains_.map<double>([](const Rational& q) { return q.get_d(); });
}

Matrix<Rational> GainSystem::signed_gains() const {
  Matrix<Rational> g(entities(), affectors());
  for (std::size_t i = 0; i < entities(); ++i)
    for (std::size_t j = 0; j < affectors(); ++j)
      g(i, j) = supporter_gains_(i, j) - repressor_gains_(i, j);
  return g;
}

MaxGain max_gain(const GainSystem& system) {
  Rational best = 0;
  for (std::size_t i = 0; i < system.entities(); ++i) {
    for (std::size_t j = 0; j < system.affectors(); ++j) {
      best = std::max(best, Rational(abs(system.supporter_gains()(i, j))));
      best = std::max(best, Rational(abs(system.repressor_gains()(i, j))));
    }
  }
  return MaxGain{best};
}

std::string to_string(SystemClass tag) {
  switch (tag) {
    case SystemClass::Square: return "square";
    case SystemClass::WeaklySquare: return "weakly-square";
    case SystemClass::Nonsquare: return "nonsquare";
  }
  return "unknown";
}

Selection::Selection(const GainSystem& source, std::vector<std::optional<std::size_t>> assignments)
    : assignments_(std::move(assignments)), source_fingerprint_(source.fingerprint()) {
  if (assignments_.size() != source.entities()) {
    throw std::invalid_argument("selection has " + std::to_string(assignments_.size()) +
                                " entries for " + std::to_string(source.entities()) + " entities");
  }
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (!assignments_[i]) continue;
    const IndexSet& s = source.supporters(i);
    if (!std::binary_search(s.begin(), s.end(), *assignments_[i])) {
      throw std::invalid_argument("selection assigns affector " + std::to_string(*assignments_[i]) +
                                  " which is not a supporter of entity " + std::to_string(i));
    }
  }
}

Selection Selection::complete(const GainSystem& source, const std::vector<std::size_t>& affectors) {
  std::vector<std::optional<std::size_t>> a(affectors.begin(), affectors.end());
  return Selection(source, std::move(a));
}

Selection Selection::empty(const GainSystem& source) {
  return Selection(source, std::vector<std::optional<std::size_t>>(source.entities()));
}

bool Selection::is_complete() const {
  return std::all_of(assignments_.begin(), assignments_.end(), [](const auto& a) { return a.has_value(); });
}

std::size_t Selection::determined_count() const {
  return static_cast<std::size_t>(
      std::count_if(assignments_.begin(), assignments_.end(), [](const auto& a) { return a.has_value(); }));
}

std::vector<std::size_t> Selection::affectors() const {
  std::vector<std::size_t> out;
  out.reserve(assignments_.size());
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (!assignments_[i]) throw std::invalid_argument("selection is partial: entity " + std::to_string(i) + " undetermined");
    out.push_back(*assignments_[i]);
  }
  return out;
}

Selection Selection::with(const GainSystem& source, std::size_t entity, std::size_t affector) const {
  auto next = assignments_;
  next.at(entity) = affector;
  return Selection(source, std::move(next));
}

std::vector<std::string> validate(const GainSystem& system) {
  std::vector<std::string> violations;
  const std::size_t n = system.entities();
  const std::size_t m = system.affectors();
  if (n == 0) violations.emplace_back("system has no entities");
  if (m == 0) violations.emplace_back("system has no affectors");
  const auto& s = system.supporter_gains();
  const auto& r = system.repressor_gains();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (s(i, j) < 0) violations.push_back("negative supporter gain at " + at);
      if (r(i, j) < 0) violations.push_back("negative repressor gain at " + at);
      if (s(i, j) > 0 && r(i, j) > 0) violations.push_back("sign conflict at " + at);
    }
    if (m > 0 && system.supporters(i).empty()) {
      violations.push_back("entity " + std::to_string(i) + " has no supporter");
    }
  }
  return violations;
}

std::pair<GainSystem, std::vector<std::size_t>> remove_redundant_affectors(const GainSystem& system) {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> removed;
  for (std::size_t j = 0; j < system.affectors(); ++j) {
    bool supports = false;
    for (std::size_t i = 0; i < system.entities() && !supports; ++i) {
      supports = system.supporter_gains()(i, j) > 0;
    }
    (supports ? kept : removed).push_back(j);
  }
  if (kept.empty()) throw Error("removing redundant affectors leaves no affectors");
  if (removed.empty()) return {system, {}};
  return {GainSystem(system.supporter_gains().select_columns(kept),
                     system.repressor_gains().select_columns(kept)),
          removed};
}

SystemClass classify(const GainSystem& system) {
  const std::size_t n = system.entities();
  const std::size_t m = system.affectors();
  if (m > n + 1) return SystemClass::Nonsquare;

  std::size_t singles = 0;
  std::size_t doubles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = system.supporters(i).size();
    if (k == 1) ++singles;
    else if (k == 2) ++doubles;
  }
  if (m <= n && singles == n) return SystemClass::Square;
  if (doubles == 1 && singles + 1 == n) return SystemClass::WeaklySquare;
  throw Unclassifiable("unclassifiable system: n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                       " does not match the square, weakly square or nonsquare families");
}

std::vector<std::size_t> retained_affectors(const GainSystem& system, const Selection& selection) {
  if (selection.source_fingerprint() != system.fingerprint()) {
    throw std::invalid_argument("selection was made for a different system");
  }
  if (selection.is_complete()) return selection.affectors();

  std::vector<bool> chosen(system.affectors(), false);
  for (const auto& a : selection.assignments()) {
    if (a) chosen[*a] = true;
  }
  std::vector<bool> keep = chosen;
  for (std::size_t i = 0; i < system.entities(); ++i) {
    const IndexSet& s = system.supporters(i);
    const bool touched = std::any_of(s.begin(), s.end(), [&](std::size_t j) { return chosen[j]; });
    if (!touched) {
      for (std::size_t j : s) keep[j] = true;
    }
  }
  std::vector<std::size_t> columns;
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (keep[j]) columns.push_back(j);
  }
  return columns;
}

SelectedSystem apply_selection(const GainSystem& system, const Selection& selection) {
  std::vector<std::size_t> columns = retained_affectors(system, selection);
  GainSystem sub(system.supporter_gains().select_columns(columns),
                 system.repressor_gains().select_columns(columns));
  return SelectedSystem{std::move(sub), std::move(columns)};
}

namespace {

template <typename T>
Totals<T> totals_impl(const Matrix<T>& s, const Matrix<T>& r, std::span<const T> x) {
  if (x.size() != s.cols()) {
    throw std::invalid_argument("totals: vector length " + std::to_string(x.size()) +
                                " does not match affector count " + std::to_string(s.cols()));
  }
  std::vector<T> xv(x.begin(), x.end());
  return Totals<T>{multiply(s, xv), multiply(r, xv)};
}

}  // namespace

Totals<Rational> totals(const GainSystem& system, std::span<const Rational> x) {
  return totals_impl<Rational>(system.supporter_gains(), system.repressor_gains(), x);
}

Totals<double> totals(const GainSystem& system, std::span<const double> x) {
  return totals_impl<double>(system.supporter_gains_f(), system.repressor_gains_f(), x);
}

std::uint64_t selection_count(const GainSystem& system) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < system.entities(); ++i) {
    const std::uint64_t k = system.supporters(i).size();
    if (k == 0) return 0;
    if (count > kMax / k) return kMax;
    count *= k;
  }
  return count;
}

std::vector<std::size_t> nth_selection(const GainSystem& system, std::uint64_t index) {
  const std::size_t n = system.entities();
  std::vector<std::size_t> out(n);
  for (std::size_t i = n; i-- > 0;) {
    const IndexSet& s = system.supporters(i);
    if (s.empty()) throw std::invalid_argument("entity without supporters has no selections");
    out[i] = s[index % s.size()];
    index /= s.size();
  }
  if (index != 0) throw std::invalid_argument("selection index out of range");
  return out;
}

namespace fixtures {

namespace {
Matrix<Rational> rows(std::initializer_list<std::initializer_list<const char*>> values) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : values) {
    std::vector<Rational> r;
    for (const char* v : row) r.push_back(parse_rational(v));
    out.push_back(std::move(r));
  }
  return Matrix<Rational>::from_rows(out);
}
}  // namespace

GainSystem sys_a() {
  return GainSystem(rows({{"1", "1", "0", "0"}, {"0", "0", "1", "1"}}),
                    rows({{"0", "0", "4", "4"}, {"1", "1", "0", "0"}}));
}

GainSystem sys_b() {
  return GainSystem(rows({{"1/2", "0", "0"}, {"0", "4", "4"}}),
                    rows({{"0", "2", "1"}, {"1", "0", "0"}}));
}

GainSystem sys_c() {
  return GainSystem(rows({{"1", "0"}, {"0", "1"}}), rows({{"0", "2"}, {"1", "0"}}));
}

GainSystem sys_d() {
  return GainSystem::from_signed(rows({{"1", "1", "-1"}, {"-1", "0", "1"}}));
}

}  // namespace fixtures

}  // namespace genpf
