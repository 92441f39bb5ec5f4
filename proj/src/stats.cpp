#include "covns/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace covns {

CellSummary aggregate(std::span<const double> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  const double n = static_cast<double>(runs.size());
  double sum = 0.0;
  double best = runs.front();
  for (double x : runs) {
    sum += x;
    best = std::max(best, x);
  }
  const double mean = sum / n;
  double squares = 0.0;
  for (double x : runs) squares += (x - mean) * (x - mean);
  return {mean, best, std::sqrt(squares / n)};
}

std::size_t ResultMatrix::intern(std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.emplace_back(name);
  return names.size() - 1;
}

void ResultMatrix::add(std::string_view algorithm, std::string_view instance, double fitness) {
  const std::size_t a = intern(algorithms_, algorithm);
  const std::size_t i = intern(instances_, instance);
  cells_.resize(algorithms_.size());
  for (auto& row : cells_) row.resize(instances_.size());
  cells_[a][i].push_back(fitness);
}

const std::vector<double>& ResultMatrix::cell(std::size_t algorithm, std::size_t instance) const {
  return cells_.at(algorithm).at(instance);
}

void ResultMatrix::validate() const {
  if (algorithms_.empty()) throw std::invalid_argument("results: no rows");
  const std::size_t runs = cells_[0][0].size();
  for (std::size_t a = 0; a < algorithms_.size(); ++a) {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      const auto& c = cells_[a][i];
      if (c.empty()) {
        throw std::invalid_argument("results: no runs for (" + algorithms_[a] + ", " +
                                    instances_[i] + ")");
      }
      if (c.size() != runs) {
        throw std::invalid_argument("results: (" + algorithms_[a] + ", " + instances_[i] +
                                    ") has " + std::to_string(c.size()) + " runs, expected " +
                                    std::to_string(runs));
      }
    }
  }
}

Eigen::MatrixXd ResultMatrix::means() const {
  validate();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(algorithms_.size()),
                    static_cast<Eigen::Index>(instances_.size()));
  for (std::size_t a = 0; a < algorithms_.size(); ++a) {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(i)) = aggregate(cells_[a][i]).mean;
    }
  }
  return m;
}

Eigen::VectorXd friedman_ranks(const Eigen::MatrixXd& means) {
  const Eigen::Index k = means.rows();
  const Eigen::Index n = means.cols();
  if (k < 2) throw std::invalid_argument("friedman_ranks: need at least two algorithms");
  if (n < 1) throw std::invalid_argument("friedman_ranks: need at least one instance");
  if (!means.allFinite()) throw std::invalid_argument("friedman_ranks: missing or non-finite cell");

  Eigen::VectorXd total = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < k; ++a) {
      double better = 0.0;
      double tied = 0.0;
      for (Eigen::Index b = 0; b < k; ++b) {
        if (b == a) continue;
        if (means(b, i) > means(a, i)) better += 1.0;
        else if (means(b, i) == means(a, i)) tied += 1.0;
      }
      total(a) += 1.0 + better + tied / 2.0;
    }
  }
  return total / static_cast<double>(n);
}

double two_sided_normal_p(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

std::vector<PosthocComparison> holm_posthoc(std::span<const std::string> algorithms,
                                            const Eigen::VectorXd& mean_ranks,
                                            std::size_t instance_count,
                                            std::string_view control) {
  const std::size_t k = algorithms.size();
  if (k < 2) throw std::invalid_argument("holm_posthoc: need at least two algorithms");
  if (instance_count < 1) throw std::invalid_argument("holm_posthoc: need at least one instance");
  if (static_cast<std::size_t>(mean_ranks.size()) != k) {
    throw std::invalid_argument("holm_posthoc: one rank per algorithm expected");
  }
  const auto control_it = std::find(algorithms.begin(), algorithms.end(), control);
  if (control_it == algorithms.end()) {
    throw std::invalid_argument("holm_posthoc: control '" + std::string(control) + "' not present");
  }
  const auto c = static_cast<Eigen::Index>(control_it - algorithms.begin());
  const double kd = static_cast<double>(k);
  const double se = std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(instance_count)));

  std::vector<PosthocComparison> rows;
  for (std::size_t j = 0; j < k; ++j) {
    if (static_cast<Eigen::Index>(j) == c) continue;
    const double z = (mean_ranks(static_cast<Eigen::Index>(j)) - mean_ranks(c)) / se;
    rows.push_back({algorithms[j], z, two_sided_normal_p(z), 0.0});
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].unadjusted_p < rows[b].unadjusted_p;
  });
  const std::size_t m = rows.size();
  double running = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    auto& row = rows[order[i]];
    running = std::max(running, std::min(1.0, static_cast<double>(m - i) * row.unadjusted_p));
    row.adjusted_p = running;
  }
  return rows;
}

StatsReport analyze(const ResultMatrix& results, std::string_view control) {
  results.validate();
  StatsReport report;
  report.algorithms = results.algorithms();
  report.instances = results.instances();
  report.control = std::string(control);
  for (std::size_t a = 0; a < report.algorithms.size(); ++a) {
    auto& row = report.cells.emplace_back();
    for (std::size_t i = 0; i < report.instances.size(); ++i) {
      row.push_back(aggregate(results.cell(a, i)));
    }
  }
  if (report.algorithms.size() == 1) {
    report.mean_ranks = Eigen::VectorXd::Ones(1);
    return report;
  }
  report.mean_ranks = friedman_ranks(results.means());
  report.posthoc =
      holm_posthoc(report.algorithms, report.mean_ranks, report.instances.size(), control);
  return report;
}

namespace {

std::string fixed(double x, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, x);
  return buffer;
}

std::string exact(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

const PosthocComparison* find_row(const StatsReport& r, const std::string& algorithm) {
  for (const auto& row : r.posthoc) {
    if (row.algorithm == algorithm) return &row;
  }
  return nullptr;
}

}  // namespace

std::string format_report(const StatsReport& r) {
  std::size_t name_width = 10;
  for (const auto& a : r.algorithms) name_width = std::max(name_width, a.size() + 2);
  std::size_t col = 8;
  for (const auto& i : r.instances) col = std::max(col, i.size() + 2);

  std::ostringstream out;
  out << "Fitness per instance (mean / best / std)\n";
  out << pad("", name_width + 6);
  for (const auto& i : r.instances) out << pad(i, col);
  out << "\n";
  const char* labels[] = {"mean", "best", "std"};
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    for (int s = 0; s < 3; ++s) {
      out << pad(s == 0 ? r.algorithms[a] : "", name_width) << pad(labels[s], 6);
      for (const auto& c : r.cells[a]) {
        const double v = s == 0 ? c.mean : s == 1 ? c.best : c.std;
        out << pad(fixed(v, 3), col);
      }
      out << "\n";
    }
  }

  out << "\nFriedman mean ranks (lower is better)";
  if (!r.posthoc.empty()) out << " and Holm post-hoc vs " << r.control;
  out << "\n";
  out << pad("algorithm", name_width) << pad("rank", 10);
  if (!r.posthoc.empty()) out << pad("unadj. p", 12) << pad("adj. p", 12);
  out << "\n";
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    out << pad(r.algorithms[a], name_width)
        << pad(fixed(r.mean_ranks(static_cast<Eigen::Index>(a)), 4), 10);
    if (!r.posthoc.empty()) {
      if (const auto* row = find_row(r, r.algorithms[a])) {
        out << pad(fixed(row->unadjusted_p, 6), 12) << pad(fixed(row->adjusted_p, 6), 12);
      } else {
        out << pad("--", 12) << pad("--", 12);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string report_csv(const StatsReport& r) {
  std::ostringstream out;
  out << "algorithm,instance,mean,best,std\n";
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    for (std::size_t i = 0; i < r.instances.size(); ++i) {
      const auto& c = r.cells[a][i];
      out << r.algorithms[a] << ',' << r.instances[i] << ',' << exact(c.mean) << ','
          << exact(c.best) << ',' << exact(c.std) << '\n';
    }
  }
  out << "\nalgorithm,mean_rank,z,unadjusted_p,adjusted_p\n";
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    out << r.algorithms[a] << ',' << exact(r.mean_ranks(static_cast<Eigen::Index>(a)));
    if (const auto* row = find_row(r, r.algorithms[a])) {
      out << ',' << exact(row->z) << ',' << exact(row->unadjusted_p) << ','
          << exact(row->adjusted_p);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

nlohmann::json report_json(const StatsReport& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    for (std::size_t i = 0; i < r.instances.size(); ++i) {
      const auto& c = r.cells[a][i];
      cells.push_back({{"algorithm", r.algorithms[a]},
                       {"instance", r.instances[i]},
                       {"mean", c.mean},
                       {"best", c.best},
                       {"std", c.std}});
    }
  }
  nlohmann::json ranks = nlohmann::json::object();
  for (std::size_t a = 0; a < r.algorithms.size(); ++a) {
    ranks[r.algorithms[a]] = r.mean_ranks(static_cast<Eigen::Index>(a));
  }
  nlohmann::json posthoc = nlohmann::json::array();
  for (const auto& row : r.posthoc) {
    posthoc.push_back({{"algorithm", row.algorithm},
                       {"z", row.z},
                       {"unadjusted_p", row.unadjusted_p},
                       {"adjusted_p", row.adjusted_p}});
  }
  return {{"control", r.control}, {"cells", cells}, {"mean_ranks", ranks}, {"posthoc", posthoc}};
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

ResultMatrix read_results_csv(std::istream& in, std::string_view source) {
  auto fail = [&](std::size_t line, const std::string& what) {
    throw std::runtime_error(std::string(source) + ":" + std::to_string(line) + ": " + what);
  };
  std::string line;
  std::size_t number = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) header = split_csv(line);
  }
  if (header.empty()) fail(number, "missing header");
  auto column = [&](std::initializer_list<std::string_view> names) -> long {
    for (auto name : names) {
      auto it = std::find(header.begin(), header.end(), name);
      if (it != header.end()) return it - header.begin();
    }
    return -1;
  };
  const long alg = column({"algorithm"});
  const long inst = column({"instance"});
  const long fit = column({"fitness", "best_fitness"});
  if (alg < 0 || inst < 0 || fit < 0) {
    fail(number, "header must name algorithm, instance and fitness (or best_fitness)");
  }

  ResultMatrix results;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      fail(number, "expected " + std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    const std::string& text = fields[static_cast<std::size_t>(fit)];
    double value = 0.0;
    std::size_t used = 0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(value)) {
      fail(number, "fitness '" + text + "' is not a finite number");
    }
    if (fields[static_cast<std::size_t>(alg)].empty() ||
        fields[static_cast<std::size_t>(inst)].empty()) {
      fail(number, "empty algorithm or instance name");
    }
    results.add(fields[static_cast<std::size_t>(alg)], fields[static_cast<std::size_t>(inst)], value);
  }
  return results;
}

}  // namespace covns
