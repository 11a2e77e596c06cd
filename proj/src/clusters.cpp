#include "pscli/detail/clusters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "pscli/errors.hpp"

namespace pscli::detail {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Largest spread an m-fold root can show after a backward-stable solve.
double tolerance(std::size_t m, double scale) { return std::pow(1e4 * kEps, 1.0 / static_cast<double>(m)) * scale; }

// Node of the single-linkage merge tree.
struct Node {
  std::vector<std::size_t> members;
  Complex centroid;
  double spread = 0.0;
  int left = -1;
  int right = -1;
};

Node make_node(const std::vector<Complex>& values, std::vector<std::size_t> members, int left, int right) {
  Complex sum = 0.0;
  for (auto i : members) sum += values[i];
  Node node{std::move(members), 0.0, 0.0, left, right};
  node.centroid = sum / static_cast<double>(node.members.size());
  for (auto i : node.members) node.spread = std::max(node.spread, std::abs(values[i] - node.centroid));
  return node;
}

// Replaces each accepted cluster by its centroid, descending into children
// when a node is too wide for its multiplicity.
void cut(const std::vector<Node>& nodes, int id, double scale, std::vector<Complex>& values) {
  const Node& node = nodes[static_cast<std::size_t>(id)];
  if (node.members.size() == 1) return;
  if (node.spread <= tolerance(node.members.size(), scale)) {
    for (auto i : node.members) values[i] = node.centroid;
    return;
  }
  cut(nodes, node.left, scale, values);
  cut(nodes, node.right, scale, values);
}

}  // namespace

std::vector<Complex> collapse_clusters(std::vector<Complex> values, double scale) {
  const std::size_t n = values.size();
  if (n < 2) return values;

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(std::abs(values[i] - values[j]), i, j);
  std::sort(pairs.begin(), pairs.end());

  std::vector<Node> nodes;
  nodes.reserve(2 * n);
  std::vector<int> root(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back(make_node(values, {i}, -1, -1));
    root[i] = static_cast<int>(i);
  }

  // Merging stops at the widest spread any cluster of n roots could show.
  const double limit = tolerance(n, scale);
  for (const auto& [dist, i, j] : pairs) {
    const int a = root[i];
    const int b = root[j];
    if (a == b) continue;
    std::vector<std::size_t> merged = nodes[static_cast<std::size_t>(a)].members;
    const auto& other = nodes[static_cast<std::size_t>(b)].members;
    merged.insert(merged.end(), other.begin(), other.end());
    Node node = make_node(values, std::move(merged), a, b);
    if (node.spread > limit) continue;
    const int id = static_cast<int>(nodes.size());
    for (auto k : node.members) root[k] = id;
    nodes.push_back(std::move(node));
  }

  std::vector<int> tops(root.begin(), root.end());
  std::sort(tops.begin(), tops.end());
  tops.erase(std::unique(tops.begin(), tops.end()), tops.end());
  for (int id : tops) cut(nodes, id, scale, values);
  return values;
}

void balance(Matrix& M) {
  constexpr double radix = 2.0;
  constexpr double radix_sq = radix * radix;
  const Eigen::Index n = M.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(M(j, i));
        row += std::abs(M(i, j));
      }
      if (row == 0.0 || col == 0.0) continue;
      const double total = col + row;
      double f = 1.0;
      double g = row / radix;
      while (col < g) {
        f *= radix;
        col *= radix_sq;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix_sq;
      }
      if ((col + row) / f < 0.95 * total) {
        done = false;
        M.row(i) /= f;
        M.col(i) *= f;
      }
    }
  }
}

std::vector<Complex> refined_eigenvalues(Matrix M) {
  if (M.rows() != M.cols()) throw InvalidArgument("refined_eigenvalues: matrix must be square");
  if (M.rows() == 0) return {};
  if (!M.allFinite()) throw NumericalError("refined_eigenvalues: non-finite matrix entries");
  balance(M);
  Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> values(ev.data(), ev.data() + ev.size());
  double scale = 1.0;
  for (const auto& v : values) scale = std::max(scale, std::abs(v));
  return collapse_clusters(std::move(values), scale);
}

}  // namespace pscli::detail
