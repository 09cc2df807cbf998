#include "gapforge/downstream.hpp"

#include <algorithm>
#include <sstream>

namespace gapforge {

CoverageInstance::CoverageInstance(std::size_t universe, std::vector<IndexSet> sets, std::size_t k)
    : universe_(universe), sets_(std::move(sets)), k_(k) {
  if (k_ < 1) throw DomainError("CoverageInstance: k must be positive");
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("CoverageInstance: repeated element");
    if (!s.empty() && s.back() >= universe_) throw DomainError("CoverageInstance: element outside the universe");
  }
}

IndexSet CoverageInstance::uncovered_elements() const {
  std::vector<bool> hit(universe_, false);
  for (const auto& s : sets_)
    for (auto u : s) hit[u] = true;
  IndexSet out;
  for (std::size_t u = 0; u < universe_; ++u)
    if (!hit[u]) out.push_back(static_cast<std::uint32_t>(u));
  return out;
}

std::string write_coverage(const CoverageInstance& I) {
  std::ostringstream os;
  os << "cov " << I.universe() << ' ' << I.num_sets() << ' ' << I.k() << '\n';
  for (const auto& s : I.sets()) {
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << '\n';
  }
  return os.str();
}

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

template <typename T>
std::vector<T> numbers(const std::string& line, std::string_view what) {
  std::istringstream in(line);
  std::vector<T> out;
  T v{};
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw DomainError(std::string(what) + ": bad number in '" + line + "'");
  return out;
}

}  // namespace

CoverageInstance parse_coverage(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw DomainError("cov: empty input");
  std::istringstream header(lines[0]);
  std::string tag;
  std::size_t universe = 0, count = 0, k = 0;
  if (!(header >> tag >> universe >> count >> k) || tag != "cov") throw DomainError("cov: malformed header");
  if (lines.size() < count + 1) throw DomainError("cov: expected " + std::to_string(count) + " set lines");
  std::vector<IndexSet> sets;
  for (std::size_t i = 0; i < count; ++i) {
    auto v = numbers<long long>(lines[i + 1], "cov");
    IndexSet s;
    for (auto x : v) {
      if (x < 0) throw DomainError("cov: negative element");
      s.push_back(static_cast<std::uint32_t>(x));
    }
    sets.push_back(std::move(s));
  }
  return CoverageInstance(universe, std::move(sets), k);
}

// ---------------------------------------------------------------------------

PartitionSystem::PartitionSystem(std::size_t labels, std::size_t t, std::uint64_t budget) : labels_(labels), t_(t) {
  if (labels < 1) throw DomainError("partition_system: need at least one label");
  if (t < 2) throw DomainError("partition_system: t must be at least 2");
  size_ = sat_pow(t, labels);
  require_budget("partition_system", size_, budget);
  weight_.assign(labels, 1);
  for (std::size_t a = labels - 1; a-- > 0;) weight_[a] = weight_[a + 1] * t;
}

std::size_t PartitionSystem::digit(std::uint64_t e, std::size_t a) const {
  return static_cast<std::size_t>((e / weight_.at(a)) % t_);
}

IndexSet PartitionSystem::part(std::size_t a, std::size_t j) const {
  if (a >= labels_ || j >= t_) throw DomainError("partition_system: part index out of range");
  IndexSet out;
  out.reserve(size_ / t_);
  for (std::uint64_t e = 0; e < size_; ++e)
    if (digit(e, a) == j) out.push_back(static_cast<std::uint32_t>(e));
  return out;
}

std::uint64_t uncovered_by_parts(const PartitionSystem& P, const std::vector<std::pair<std::size_t, std::size_t>>& parts) {
  std::uint64_t uncovered = 0;
  for (std::uint64_t e = 0; e < P.size(); ++e) {
    bool hit = false;
    for (auto [a, j] : parts)
      if (P.in_part(e, a, j)) {
        hit = true;
        break;
      }
    if (!hit) ++uncovered;
  }
  return uncovered;
}

FeigeReduction feige_coverage_reduction(const LabelCoverInstance& L, std::uint64_t budget) {
  const auto t = L.right_degree();
  if (!t || !L.is_bi_regular()) throw DomainError("feige_coverage_reduction: instance must be bi-regular");
  if (*t < 2) throw DomainError("feige_coverage_reduction: right degree must be at least 2");
  if (L.vacuous()) throw DomainError("feige_coverage_reduction: instance has an empty alphabet");

  FeigeReduction R;
  R.t = *t;
  std::uint64_t total = 0;
  std::vector<PartitionSystem> systems;
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    R.offsets.push_back(total);
    if (L.right_alphabet(v) > 64) throw BudgetExceeded("feige_coverage_reduction: t^|Σ_v|", kSaturated, budget);
    systems.emplace_back(static_cast<std::size_t>(L.right_alphabet(v)), *t, budget);
    total = sat_add(total, systems.back().size());
  }
  require_budget("feige_coverage_reduction: |U'|", total, budget);
  if (total > UINT32_MAX) throw BudgetExceeded("feige_coverage_reduction: |U'|", total, UINT32_MAX);

  std::uint64_t volume = 0;
  for (std::size_t u = 0; u < L.num_left(); ++u)
    for (auto e : L.left_edges(u))
      volume = sat_add(volume, sat_mul(L.left_alphabet(u), systems[L.edge(e).right].size() / *t));
  require_budget("feige_coverage_reduction: total set size", volume, budget);

  // Rank of each edge's left endpoint among its right vertex's neighbors.
  std::vector<std::size_t> rank(L.num_edges());
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    const auto& list = L.right_edges(v);
    for (std::size_t i = 0; i < list.size(); ++i) rank[list[i]] = i;
  }

  std::vector<IndexSet> sets;
  for (std::size_t u = 0; u < L.num_left(); ++u) {
    for (std::uint64_t a = 0; a < L.left_alphabet(u); ++a) {
      IndexSet s;
      for (auto e : L.left_edges(u)) {
        const std::size_t v = L.edge(e).right;
        const PartitionSystem& P = systems[v];
        const std::size_t label = L.project(e, a);
        for (std::uint64_t x = 0; x < P.size(); ++x)
          if (P.in_part(x, label, rank[e])) s.push_back(static_cast<std::uint32_t>(R.offsets[v] + x));
      }
      sets.push_back(std::move(s));
      R.set_owner.emplace_back(static_cast<std::uint32_t>(u), a);
    }
  }
  R.instance = CoverageInstance(total, std::move(sets), L.num_left());
  return R;
}

IndexSet labeling_sets(const FeigeReduction& R, const LeftLabeling& sigma) {
  IndexSet out;
  for (std::size_t s = 0; s < R.set_owner.size(); ++s) {
    auto [u, a] = R.set_owner[s];
    if (u >= sigma.size()) throw DomainError("labeling_sets: labeling too short");
    if (sigma[u] == a) out.push_back(static_cast<std::uint32_t>(s));
  }
  if (out.size() != sigma.size()) throw DomainError("labeling_sets: label out of range");
  return out;
}

// ---------------------------------------------------------------------------

ClusteringInstance::ClusteringInstance(std::size_t clients, std::size_t facilities, std::vector<std::uint32_t> distances,
                                       std::size_t k, bool check_triangle)
    : clients_(clients), facilities_(facilities), dist_(std::move(distances)), k_(k) {
  const std::size_t n = points();
  if (dist_.size() != n * n) throw DomainError("ClusteringInstance: distance table has the wrong size");
  if (k_ < 1) throw DomainError("ClusteringInstance: k must be positive");
  for (std::size_t a = 0; a < n; ++a) {
    if (d(a, a) != 0) throw DomainError("ClusteringInstance: nonzero diagonal");
    for (std::size_t b = a + 1; b < n; ++b)
      if (d(a, b) != d(b, a)) throw DomainError("ClusteringInstance: asymmetric distances");
  }
  if (check_triangle) {
    if (auto bad = find_triangle_violation(*this))
      throw DomainError("ClusteringInstance: triangle inequality fails at (" + std::to_string((*bad)[0]) + ", " +
                        std::to_string((*bad)[1]) + ", " + std::to_string((*bad)[2]) + ")");
  }
}

std::optional<std::array<std::size_t, 3>> find_triangle_violation(const ClusteringInstance& I) {
  const std::size_t n = I.points();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (static_cast<std::uint64_t>(I.d(a, c)) > static_cast<std::uint64_t>(I.d(a, b)) + I.d(b, c))
          return std::array<std::size_t, 3>{a, b, c};
  return std::nullopt;
}

std::string write_clustering(const ClusteringInstance& I) {
  std::ostringstream os;
  os << "clustering " << I.clients() << ' ' << I.facilities() << ' ' << I.k() << '\n';
  for (std::size_t a = 0; a < I.points(); ++a) {
    for (std::size_t b = 0; b < I.points(); ++b) os << (b ? " " : "") << I.d(a, b);
    os << '\n';
  }
  return os.str();
}

ClusteringInstance parse_clustering(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw DomainError("clustering: empty input");
  std::istringstream header(lines[0]);
  std::string tag;
  std::size_t clients = 0, facilities = 0, k = 0;
  if (!(header >> tag >> clients >> facilities >> k) || tag != "clustering")
    throw DomainError("clustering: malformed header");
  const std::size_t n = clients + facilities;
  if (lines.size() < n + 1) throw DomainError("clustering: expected " + std::to_string(n) + " matrix rows");
  std::vector<std::uint32_t> dist;
  for (std::size_t a = 0; a < n; ++a) {
    auto row = numbers<long long>(lines[a + 1], "clustering");
    if (row.size() != n) throw DomainError("clustering: row " + std::to_string(a) + " has the wrong length");
    for (auto v : row) {
      if (v < 0 || v > UINT32_MAX) throw DomainError("clustering: distance out of range");
      dist.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return ClusteringInstance(clients, facilities, std::move(dist), k);
}

ClusteringInstance guha_khuller_reduction(const CoverageInstance& I, std::uint64_t budget) {
  const std::size_t clients = I.universe();
  const std::size_t facilities = I.num_sets();
  const std::size_t n = clients + facilities;
  require_budget("guha-khuller reduction: distance matrix cells", sat_mul(n, n), budget);
  std::vector<std::uint32_t> dist(n * n, 2);
  for (std::size_t a = 0; a < n; ++a) dist[a * n + a] = 0;
  for (std::size_t c = 0; c < clients; ++c)
    for (std::size_t f = 0; f < facilities; ++f) dist[c * n + clients + f] = dist[(clients + f) * n + c] = 3;
  for (std::size_t f = 0; f < facilities; ++f)
    for (auto c : I.set(f)) dist[c * n + clients + f] = dist[(clients + f) * n + c] = 1;
  ClusteringInstance out(clients, facilities, std::move(dist), I.k());
  out.degenerate = !I.uncovered_elements().empty();
  return out;
}

// ---------------------------------------------------------------------------

std::uint64_t ncp_cost(const CodeInstance& I, const std::vector<std::uint8_t>& x) {
  if (x.size() != I.cols) throw DomainError("ncp_cost: x has the wrong length");
  std::uint64_t cost = 0;
  for (std::size_t r = 0; r < I.rows; ++r) {
    std::uint8_t bit = 0;
    for (std::size_t c = 0; c < I.cols; ++c) bit ^= static_cast<std::uint8_t>(I.A[r][c] & x[c]);
    if (bit != I.y[r]) ++cost;
  }
  return cost;
}

BigInt cvp_cost(const LatticeInstance& I, const std::vector<std::int64_t>& x) {
  if (x.size() != I.cols) throw DomainError("cvp_cost: x has the wrong length");
  BigInt cost = 0;
  for (std::size_t r = 0; r < I.rows; ++r) {
    BigInt v = -BigInt(I.y[r]);
    for (std::size_t c = 0; c < I.cols; ++c) v += BigInt(I.A[r][c]) * x[c];
    if (v < 0) v = -v;
    cost += boost::multiprecision::pow(v, I.p);
  }
  return cost;
}

namespace {

void check_abss(const CoverageInstance& I, std::size_t threshold, std::size_t multiplicity) {
  if (multiplicity < threshold + 1) throw DomainError("abss reduction: multiplicity must be at least threshold + 1");
  const std::uint64_t rows = sat_add(sat_mul(multiplicity, I.universe()), I.num_sets());
  require_budget("abss reduction: matrix cells", sat_mul(rows, I.num_sets()), kDefaultBudget);
}

}  // namespace

CodeInstance abss_ncp_reduction(const CoverageInstance& I, std::size_t threshold, std::size_t multiplicity) {
  check_abss(I, threshold, multiplicity);
  CodeInstance out;
  out.cols = I.num_sets();
  out.k = I.k();
  std::vector<std::vector<std::uint8_t>> incidence(I.universe(), std::vector<std::uint8_t>(out.cols, 0));
  for (std::size_t s = 0; s < I.num_sets(); ++s)
    for (auto u : I.set(s)) incidence[u][s] = 1;
  for (std::size_t copy = 0; copy < multiplicity; ++copy)
    for (std::size_t u = 0; u < I.universe(); ++u) {
      out.A.push_back(incidence[u]);
      out.y.push_back(1);
    }
  for (std::size_t s = 0; s < I.num_sets(); ++s) {
    std::vector<std::uint8_t> row(out.cols, 0);
    row[s] = 1;
    out.A.push_back(std::move(row));
    out.y.push_back(0);
  }
  out.rows = out.A.size();
  return out;
}

LatticeInstance abss_cvp_reduction(const CoverageInstance& I, std::size_t threshold, std::size_t multiplicity,
                                   unsigned p) {
  if (p < 1) throw DomainError("abss_cvp_reduction: p must be at least 1");
  check_abss(I, threshold, multiplicity);
  const CodeInstance code = abss_ncp_reduction(I, threshold, multiplicity);
  LatticeInstance out;
  out.rows = code.rows;
  out.cols = code.cols;
  out.k = code.k;
  out.p = p;
  for (const auto& row : code.A) out.A.emplace_back(row.begin(), row.end());
  out.y.assign(code.y.begin(), code.y.end());
  return out;
}

std::string write_code(const CodeInstance& I) {
  std::ostringstream os;
  os << "code " << I.rows << ' ' << I.cols << ' ' << I.k << '\n';
  for (const auto& row : I.A) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << int(row[c]);
    os << '\n';
  }
  os << 'y';
  for (auto v : I.y) os << ' ' << int(v);
  os << '\n';
  return os.str();
}

CodeInstance parse_code(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw DomainError("code: empty input");
  std::istringstream header(lines[0]);
  std::string tag;
  CodeInstance I;
  if (!(header >> tag >> I.rows >> I.cols >> I.k) || tag != "code") throw DomainError("code: malformed header");
  if (lines.size() < I.rows + 2) throw DomainError("code: expected matrix rows and a target line");
  for (std::size_t r = 0; r < I.rows; ++r) {
    auto row = numbers<int>(lines[r + 1], "code");
    if (row.size() != I.cols) throw DomainError("code: row " + std::to_string(r) + " has the wrong length");
    std::vector<std::uint8_t> bits;
    for (auto v : row) {
      if (v != 0 && v != 1) throw DomainError("code: entries must be 0 or 1");
      bits.push_back(static_cast<std::uint8_t>(v));
    }
    I.A.push_back(std::move(bits));
  }
  const std::string& yl = lines[I.rows + 1];
  if (yl.empty() || yl[0] != 'y') throw DomainError("code: missing target line");
  auto y = numbers<int>(yl.substr(1), "code");
  if (y.size() != I.rows) throw DomainError("code: target has the wrong length");
  for (auto v : y) {
    if (v != 0 && v != 1) throw DomainError("code: target entries must be 0 or 1");
    I.y.push_back(static_cast<std::uint8_t>(v));
  }
  return I;
}

std::string write_lattice(const LatticeInstance& I) {
  std::ostringstream os;
  os << "lattice " << I.rows << ' ' << I.cols << ' ' << I.k << ' ' << I.p << '\n';
  for (const auto& row : I.A) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c];
    os << '\n';
  }
  os << 'y';
  for (auto v : I.y) os << ' ' << v;
  os << '\n';
  return os.str();
}

LatticeInstance parse_lattice(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw DomainError("lattice: empty input");
  std::istringstream header(lines[0]);
  std::string tag;
  LatticeInstance I;
  if (!(header >> tag >> I.rows >> I.cols >> I.k >> I.p) || tag != "lattice")
    throw DomainError("lattice: malformed header");
  if (I.p < 1) throw DomainError("lattice: p must be at least 1");
  if (lines.size() < I.rows + 2) throw DomainError("lattice: expected matrix rows and a target line");
  for (std::size_t r = 0; r < I.rows; ++r) {
    auto row = numbers<std::int64_t>(lines[r + 1], "lattice");
    if (row.size() != I.cols) throw DomainError("lattice: row " + std::to_string(r) + " has the wrong length");
    I.A.push_back(std::move(row));
  }
  const std::string& yl = lines[I.rows + 1];
  if (yl.empty() || yl[0] != 'y') throw DomainError("lattice: missing target line");
  I.y = numbers<std::int64_t>(yl.substr(1), "lattice");
  if (I.y.size() != I.rows) throw DomainError("lattice: target has the wrong length");
  return I;
}

}  // namespace gapforge
