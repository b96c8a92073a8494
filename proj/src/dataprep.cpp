#include "lupus/dataprep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lupus/error.hpp"
#include "lupus/format.hpp"
#include "lupus/io.hpp"
#include "lupus/rng.hpp"

namespace lupus::data {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_real(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

bool looks_like_header(const std::vector<std::string>& fields) {
  double ignored;
  return std::none_of(fields.begin(), fields.end(), [&](const std::string& f) {
    return f == kMissing || parse_real(f, ignored);
  });
}

std::string location(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

void require_variance(double sd, std::string_view name) {
  if (!(sd > 0.0)) throw ConfigError("column '" + std::string(name) + "' has zero variance");
}

}  // namespace

RawTable parse_table(std::string_view text, std::string_view source) {
  RawTable t;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = trim(text.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty()) continue;

    auto fields = split_fields(line);
    if (fields.size() != kRawColumns) {
      throw DataError(location(source, line_no) + ": expected " + std::to_string(kRawColumns) +
                      " fields, found " + std::to_string(fields.size()));
    }
    if (first && looks_like_header(fields)) {
      t.header = std::move(fields);
      first = false;
      continue;
    }
    first = false;
    t.rows.push_back(std::move(fields));
    t.line_numbers.push_back(line_no);
  }
  if (t.rows.empty()) throw DataError(std::string(source) + ": no data rows");
  if (t.header.empty()) t.header.assign(kColumnNames.begin(), kColumnNames.end());
  return t;
}

RawTable load_table(const std::filesystem::path& path) {
  return parse_table(read_file(path), path.string());
}

Dataset clean(const RawTable& raw, const CleanOptions& opts) {
  constexpr std::size_t n_feat = kRawColumns - 1;
  constexpr std::size_t target = kRawColumns - 1;

  // Parse every cell up front; missing cells stay NaN until policy is applied.
  std::vector<std::array<double, kRawColumns>> parsed;
  std::vector<bool> has_missing;
  parsed.reserve(raw.rows.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    std::array<double, kRawColumns> v{};
    bool missing = false;
    for (std::size_t j = 0; j < kRawColumns; ++j) {
      const std::string& cell = raw.rows[r][j];
      if (cell == kMissing) {
        v[j] = std::nan("");
        missing = true;
      } else if (!parse_real(cell, v[j])) {
        const std::size_t line = r < raw.line_numbers.size() ? raw.line_numbers[r] : r + 1;
        throw DataError("line " + std::to_string(line) + ": column '" + kColumnNames[j] +
                        "' is not numeric: '" + cell + "'");
      }
    }
    parsed.push_back(v);
    has_missing.push_back(missing);
  }

  if (opts.missing == MissingPolicy::impute_mode) {
    for (std::size_t j = 0; j < n_feat; ++j) {
      std::map<double, std::size_t> counts;
      for (const auto& v : parsed) {
        if (!std::isnan(v[j])) ++counts[v[j]];
      }
      if (counts.empty()) continue;
      // Ties resolve to the smallest value (first in map order).
      const auto mode = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) {
                          return a.second < b.second;
                        })->first;
      for (auto& v : parsed) {
        if (std::isnan(v[j])) v[j] = mode;
      }
    }
  }

  std::vector<std::array<double, kRawColumns>> kept;
  for (std::size_t r = 0; r < parsed.size(); ++r) {
    const auto& v = parsed[r];
    if (has_missing[r] && std::any_of(v.begin(), v.end(), [](double x) { return std::isnan(x); }))
      continue;
    kept.push_back(v);
  }
  if (kept.empty()) throw DataError("no rows left after removing missing values");

  // Feature layout: numeric columns keep their position; categorical columns
  // expand in place to one indicator per observed level when one_hot is set.
  struct Source {
    std::size_t column;
    bool indicator;
    double level;
  };
  std::vector<Source> layout;
  Dataset ds;
  for (std::size_t j = 0; j < n_feat; ++j) {
    const bool categorical = opts.one_hot && std::find(kCategoricalColumns.begin(),
                                                       kCategoricalColumns.end(),
                                                       kColumnNames[j]) != kCategoricalColumns.end();
    if (!categorical) {
      layout.push_back({j, false, 0.0});
      ds.feature_names.push_back(kColumnNames[j]);
      continue;
    }
    std::set<double> levels;
    for (const auto& v : kept) levels.insert(v[j]);
    for (double level : levels) {
      layout.push_back({j, true, level});
      ds.feature_names.push_back(kColumnNames[j] + "=" + format_real(level));
    }
  }

  ds.X = Matrix(kept.size(), layout.size());
  ds.y.resize(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t k = 0; k < layout.size(); ++k) {
      const double x = kept[i][layout[k].column];
      ds.X(i, k) = layout[k].indicator ? (x == layout[k].level ? 1.0 : 0.0) : x;
    }
    ds.y[i] = kept[i][target] > 0.0 ? 1 : 0;
  }
  return ds;
}

Dataset select_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  Dataset out;
  out.feature_names = ds.feature_names;
  out.X = Matrix(rows.size(), ds.features());
  out.y.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = ds.X.row(rows[i]);
    std::copy(src.begin(), src.end(), out.X.row(i).begin());
    out.y.push_back(ds.y[rows[i]]);
  }
  return out;
}

StandardizationStats fit_standardizer(const Matrix& X, std::span<const std::string> names) {
  if (X.rows == 0) throw ConfigError("cannot fit a standardizer on zero rows");
  StandardizationStats s;
  s.mean.assign(X.cols, 0.0);
  s.std.assign(X.cols, 0.0);
  const double n = static_cast<double>(X.rows);
  for (std::size_t j = 0; j < X.cols; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) sum += X(i, j);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < X.rows; ++i) ss += (X(i, j) - mean) * (X(i, j) - mean);
    s.mean[j] = mean;
    s.std[j] = std::sqrt(ss / n);
    require_variance(s.std[j], j < names.size() ? names[j] : "#" + std::to_string(j));
  }
  return s;
}

Matrix apply_standardizer(const StandardizationStats& stats, const Matrix& X) {
  if (stats.mean.size() != X.cols || stats.std.size() != X.cols) {
    throw ConfigError("standardizer has " + std::to_string(stats.mean.size()) +
                      " columns, data has " + std::to_string(X.cols));
  }
  Matrix Z(X.rows, X.cols);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) Z(i, j) = (X(i, j) - stats.mean[j]) / stats.std[j];
  return Z;
}

Split stratified_split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train fraction must lie in (0, 1), got " + format_real(train_fraction));
  }
  Rng rng(seed);
  Split s;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < ds.size(); ++i)
      if (ds.y[i] == cls) idx.push_back(i);
    if (idx.size() < 2) {
      throw ConfigError("class " + std::to_string(cls) + " has " + std::to_string(idx.size()) +
                        " member(s); stratified splitting needs at least 2");
    }
    shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::lround(train_fraction * static_cast<double>(idx.size())));
    s.train_rows.insert(s.train_rows.end(), idx.begin(), idx.begin() + n_train);
    s.test_rows.insert(s.test_rows.end(), idx.begin() + n_train, idx.end());
  }
  std::sort(s.train_rows.begin(), s.train_rows.end());
  std::sort(s.test_rows.begin(), s.test_rows.end());
  s.train = select_rows(ds, s.train_rows);
  s.test = select_rows(ds, s.test_rows);
  return s;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) throw DomainError("pearson: sizes differ or are zero");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) throw DomainError("pearson: zero-variance input");
  // sqrt(s*s) == s exactly in IEEE arithmetic, so r(x, x) is exactly 1.
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix pearson_corr_matrix(const Dataset& ds, bool include_target) {
  const std::size_t p = ds.features() + (include_target ? 1 : 0);
  std::vector<std::vector<double>> cols(p, std::vector<double>(ds.size()));
  CorrelationMatrix c;
  c.names = ds.feature_names;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.features(); ++j) cols[j][i] = ds.X(i, j);
    if (include_target) cols[p - 1][i] = ds.y[i];
  }
  if (include_target) c.names.push_back("target");

  for (std::size_t j = 0; j < p; ++j) {
    const auto [lo, hi] = std::minmax_element(cols[j].begin(), cols[j].end());
    if (cols[j].empty() || *lo == *hi) require_variance(0.0, c.names[j]);
  }
  c.r = Matrix(p, p);
  for (std::size_t a = 0; a < p; ++a) {
    c.r(a, a) = pearson(cols[a], cols[a]);
    for (std::size_t b = a + 1; b < p; ++b) c.r(a, b) = c.r(b, a) = pearson(cols[a], cols[b]);
  }
  return c;
}

std::string to_csv(const Dataset& ds) {
  std::ostringstream out;
  for (const auto& n : ds.feature_names) out << n << ',';
  out << "target\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (double v : ds.X.row(i)) out << format_real(v) << ',';
    out << ds.y[i] << '\n';
  }
  return out.str();
}

std::string to_csv(const CorrelationMatrix& c) {
  std::ostringstream out;
  out << "feature";
  for (const auto& n : c.names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < c.r.rows; ++i) {
    out << c.names[i];
    for (std::size_t j = 0; j < c.r.cols; ++j) out << ',' << format_real(c.r(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace lupus::data
