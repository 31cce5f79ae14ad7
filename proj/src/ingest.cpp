#include "adoge/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "adoge/error.hpp"

namespace adoge {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Splits on commas when present, otherwise on whitespace.
std::vector<std::string_view> split_fields(std::string_view line) {
  if (line.find(',') != std::string_view::npos) return split_commas(line);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void malformed(const fs::path& file, std::size_t line_no, const std::string& why) {
  throw Error(ErrorCode::MalformedLine, file.string() + ":" + std::to_string(line_no) + ": " + why);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if constexpr (std::is_floating_point_v<T>) {
    // from_chars for double rejects a leading '+', strtod is more forgiving.
    std::string tmp(s);
    char* end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size();
  } else {
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  }
}

/// Non-empty lines of a file with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_records(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
  std::vector<std::pair<std::size_t, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    out.emplace_back(line_no, std::move(line));
  }
  return out;
}

std::vector<long long> read_integer_column(const fs::path& file) {
  std::vector<long long> out;
  for (const auto& [line_no, line] : read_records(file)) {
    const auto fields = split_commas(line);
    long long v = 0;
    if (fields.empty() || !parse_number(fields[0], v)) malformed(file, line_no, "expected an integer");
    out.push_back(v);
  }
  return out;
}

bool all_integers(const std::set<std::string>& values) {
  return std::all_of(values.begin(), values.end(), [](const std::string& s) {
    long long v = 0;
    return parse_number(std::string_view(s), v);
  });
}

/// Integer-valued domains sort numerically, anything else lexicographically.
std::vector<std::string> ordered_domain(const std::set<std::string>& values) {
  std::vector<std::string> out(values.begin(), values.end());
  if (all_integers(values)) {
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) {
      return std::stoll(a) < std::stoll(b);
    });
  }
  return out;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

fs::path require(const fs::path& dir, const std::string& prefix, const std::string& suffix) {
  auto p = dir / (prefix + suffix);
  if (!fs::exists(p)) throw Error(ErrorCode::MissingRequiredFile, "missing " + p.string());
  return p;
}

std::optional<fs::path> optional_file(const fs::path& dir, const std::string& prefix, const std::string& suffix) {
  auto p = dir / (prefix + suffix);
  if (fs::exists(p)) return p;
  return std::nullopt;
}

}  // namespace

GraphDataset load_tudataset(const fs::path& directory, const std::string& prefix) {
  const auto a_file = require(directory, prefix, "_A.txt");
  const auto indicator_file = require(directory, prefix, "_graph_indicator.txt");

  GraphDataset ds;
  ds.name = prefix;

  const auto indicator = read_integer_column(indicator_file);
  const auto total_nodes = indicator.size();
  std::map<long long, std::size_t> graph_slot;
  for (auto gid : indicator) graph_slot.emplace(gid, 0);
  {
    std::size_t k = 0;
    for (auto& [gid, slot] : graph_slot) slot = k++;
  }
  const std::size_t num_graphs = graph_slot.size();
  std::vector<std::size_t> node_graph(total_nodes), node_local(total_nodes);
  std::vector<Index> graph_size(num_graphs, 0);
  for (std::size_t v = 0; v < total_nodes; ++v) {
    node_graph[v] = graph_slot.at(indicator[v]);
    node_local[v] = static_cast<std::size_t>(graph_size[node_graph[v]]++);
  }

  // Edges, keyed canonically on global 0-based ids.
  const auto a_records = read_records(a_file);
  std::vector<double> weights(a_records.size(), 1.0);
  if (auto ea = optional_file(directory, prefix, "_edge_attributes.txt")) {
    const auto records = read_records(*ea);
    if (records.size() != a_records.size()) {
      throw Error(ErrorCode::InconsistentNodeCount, ea->string() + " has " + std::to_string(records.size()) +
                                                        " records, " + a_file.string() + " has " +
                                                        std::to_string(a_records.size()));
    }
    bool extra_fields = false;
    for (std::size_t r = 0; r < records.size(); ++r) {
      const auto fields = split_commas(records[r].second);
      if (!parse_number(fields[0], weights[r])) malformed(*ea, records[r].first, "expected a real edge weight");
      extra_fields = extra_fields || fields.size() > 1;
    }
    if (extra_fields) {
      ds.report.warnings.push_back(ea->filename().string() +
                                   ": multiple edge attribute fields, using the first as weight");
    }
  }

  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  std::set<std::pair<std::size_t, std::size_t>> directed;
  bool repeated = false;
  for (std::size_t r = 0; r < a_records.size(); ++r) {
    const auto& [line_no, line] = a_records[r];
    const auto fields = split_commas(line);
    long long i = 0, j = 0;
    if (fields.size() != 2 || !parse_number(fields[0], i) || !parse_number(fields[1], j)) {
      malformed(a_file, line_no, "expected 'i, j'");
    }
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > total_nodes || static_cast<std::size_t>(j) > total_nodes) {
      throw Error(ErrorCode::InconsistentNodeCount, a_file.string() + ":" + std::to_string(line_no) + ": node id " +
                                                        "outside the " + std::to_string(total_nodes) +
                                                        " nodes of the graph indicator");
    }
    const auto gi = static_cast<std::size_t>(i - 1), gj = static_cast<std::size_t>(j - 1);
    if (node_graph[gi] != node_graph[gj]) {
      throw Error(ErrorCode::CrossGraphEdge, a_file.string() + ":" + std::to_string(line_no) + ": edge (" +
                                                 std::to_string(i) + ", " + std::to_string(j) + ") spans graphs");
    }
    repeated = !directed.emplace(gi, gj).second || repeated;
    edges.emplace(std::minmax(gi, gj), weights[r]);
  }
  ds.report.edge_lines = a_records.size();
  ds.report.undirected_edges = edges.size();
  for (const auto& [key, w] : edges) {
    if (key.first != key.second && (!directed.count(key) || !directed.count({key.second, key.first}))) {
      ds.report.mirrored = false;
      break;
    }
  }
  if (!ds.report.mirrored) ds.report.warnings.emplace_back("edge file does not list every edge in both directions");
  if (repeated) ds.report.warnings.emplace_back("edge file repeats directed pairs; duplicates ignored");

  // Node columns.
  std::vector<AttributeColumnSpec> columns;
  std::vector<std::vector<std::string>> label_tokens(num_graphs);
  std::vector<std::vector<Eigen::VectorXd>> reals(num_graphs);
  bool has_labels = false;
  if (auto nl = optional_file(directory, prefix, "_node_labels.txt")) {
    const auto labels = read_integer_column(*nl);
    if (labels.size() != total_nodes) {
      throw Error(ErrorCode::InconsistentNodeCount, nl->string() + " has " + std::to_string(labels.size()) +
                                                        " labels for " + std::to_string(total_nodes) + " nodes");
    }
    std::set<std::string> domain;
    for (std::size_t g = 0; g < num_graphs; ++g) label_tokens[g].resize(static_cast<std::size_t>(graph_size[g]));
    for (std::size_t v = 0; v < total_nodes; ++v) {
      auto token = std::to_string(labels[v]);
      domain.insert(token);
      label_tokens[node_graph[v]][node_local[v]] = std::move(token);
    }
    columns.push_back({"label", AttributeKind::Categorical, ordered_domain(domain)});
    has_labels = true;
  }
  if (auto na = optional_file(directory, prefix, "_node_attributes.txt")) {
    const auto records = read_records(*na);
    if (records.size() != total_nodes) {
      throw Error(ErrorCode::InconsistentNodeCount, na->string() + " has " + std::to_string(records.size()) +
                                                        " rows for " + std::to_string(total_nodes) + " nodes");
    }
    std::size_t width = 0;
    for (std::size_t v = 0; v < total_nodes; ++v) {
      const auto fields = split_commas(records[v].second);
      if (v == 0) {
        width = fields.size();
        for (std::size_t g = 0; g < num_graphs; ++g) {
          reals[g].assign(width, Eigen::VectorXd::Zero(graph_size[g]));
        }
      } else if (fields.size() != width) {
        malformed(*na, records[v].first, "expected " + std::to_string(width) + " fields");
      }
      for (std::size_t c = 0; c < width; ++c) {
        double x = 0;
        if (!parse_number(fields[c], x)) malformed(*na, records[v].first, "expected a real value");
        reals[node_graph[v]][c][static_cast<Index>(node_local[v])] = x;
      }
    }
    for (std::size_t c = 0; c < width; ++c) columns.push_back({"attr" + std::to_string(c), AttributeKind::Continuous, {}});
  }
  ds.schema = std::make_shared<const AttributeSchema>(std::move(columns));

  std::vector<std::vector<WeightedEdge>> per_graph(num_graphs);
  for (const auto& [key, w] : edges) {
    per_graph[node_graph[key.first]].push_back(
        {static_cast<Index>(node_local[key.first]), static_cast<Index>(node_local[key.second]), w});
  }
  ds.graphs.reserve(num_graphs);
  for (std::size_t g = 0; g < num_graphs; ++g) {
    AttributeTable table;
    if (has_labels) table.emplace_back(std::move(label_tokens[g]));
    for (auto& col : reals[g]) table.emplace_back(std::move(col));
    ds.graphs.push_back(build_graph(graph_size[g], per_graph[g], std::move(table), ds.schema));
  }

  if (auto gl = optional_file(directory, prefix, "_graph_labels.txt")) {
    const auto labels = read_integer_column(*gl);
    if (labels.size() != num_graphs) {
      throw Error(ErrorCode::InconsistentNodeCount, gl->string() + " has " + std::to_string(labels.size()) +
                                                        " labels for " + std::to_string(num_graphs) + " graphs");
    }
    ds.graph_labels.emplace(labels.begin(), labels.end());
  }
  return ds;
}

GraphDataset load_tudataset(const fs::path& directory) {
  if (!fs::is_directory(directory)) {
    throw Error(ErrorCode::MissingRequiredFile, directory.string() + " is not a directory");
  }
  std::vector<std::string> prefixes;
  for (const auto& entry : fs::directory_iterator(directory)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 6 && name.ends_with("_A.txt")) prefixes.push_back(name.substr(0, name.size() - 6));
  }
  if (prefixes.empty()) throw Error(ErrorCode::MissingRequiredFile, "no *_A.txt in " + directory.string());
  if (prefixes.size() > 1) {
    throw Error(ErrorCode::MissingRequiredFile, "several *_A.txt files in " + directory.string() + "; pass a prefix");
  }
  return load_tudataset(directory, prefixes.front());
}

void write_tudataset(const GraphDataset& ds, const fs::path& directory, const std::string& prefix) {
  fs::create_directories(directory);
  auto open = [&](const std::string& suffix) {
    std::ofstream out(directory / (prefix + suffix));
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (directory / (prefix + suffix)).string());
    return out;
  };
  const auto& cols = ds.schema->columns();
  std::optional<std::size_t> label_col;
  std::vector<std::size_t> real_cols;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].kind == AttributeKind::Continuous) {
      real_cols.push_back(c);
    } else if (!label_col) {
      label_col = c;
    }
  }

  bool weighted = false;
  for (const auto& g : ds.graphs) {
    for (const auto& e : g.edges()) weighted = weighted || e.weight != 1.0;
  }

  auto a_out = open("_A.txt");
  auto ind_out = open("_graph_indicator.txt");
  std::ofstream ea_out, nl_out, na_out;
  if (weighted) ea_out = open("_edge_attributes.txt");
  if (label_col) nl_out = open("_node_labels.txt");
  if (!real_cols.empty()) na_out = open("_node_attributes.txt");

  Index offset = 1;
  for (std::size_t g = 0; g < ds.graphs.size(); ++g) {
    const auto& graph = ds.graphs[g];
    for (const auto& e : graph.edges()) {
      a_out << e.i + offset << ", " << e.j + offset << '\n';
      if (weighted) ea_out << format_real(e.weight) << '\n';
      if (e.i != e.j) {
        a_out << e.j + offset << ", " << e.i + offset << '\n';
        if (weighted) ea_out << format_real(e.weight) << '\n';
      }
    }
    for (Index v = 0; v < graph.num_nodes(); ++v) {
      ind_out << g + 1 << '\n';
      if (label_col) nl_out << std::get<std::vector<std::string>>(graph.attributes()[*label_col])[v] << '\n';
      for (std::size_t k = 0; k < real_cols.size(); ++k) {
        if (k) na_out << ", ";
        na_out << format_real(std::get<Eigen::VectorXd>(graph.attributes()[real_cols[k]])[v]);
      }
      if (!real_cols.empty()) na_out << '\n';
    }
    offset += graph.num_nodes();
  }
  if (ds.graph_labels) {
    auto gl_out = open("_graph_labels.txt");
    for (int label : *ds.graph_labels) gl_out << label << '\n';
  }
}

namespace {

struct EdgelistAttributes {
  std::vector<AttributeColumnSpec> columns;
  std::vector<std::vector<std::string>> tokens;  // per column, per node
};

AttributeKind parse_kind(std::string_view s, const fs::path& file, std::size_t line_no) {
  if (s == "categorical") return AttributeKind::Categorical;
  if (s == "binary") return AttributeKind::Binary;
  if (s == "continuous") return AttributeKind::Continuous;
  malformed(file, line_no, "unknown attribute kind '" + std::string(s) + "'");
}

EdgelistAttributes read_attribute_file(const fs::path& file) {
  const auto records = read_records(file);
  if (records.size() < 2) malformed(file, records.empty() ? 1 : records[0].first, "expected header and #kind rows");
  EdgelistAttributes out;
  const auto names = split_fields(records[0].second);
  auto kinds = split_fields(records[1].second);
  if (kinds.empty() || kinds[0] != "#kind" || kinds.size() != names.size() + 1) {
    malformed(file, records[1].first, "expected '#kind' followed by one kind per column");
  }
  for (std::size_t c = 0; c < names.size(); ++c) {
    out.columns.push_back({std::string(names[c]), parse_kind(kinds[c + 1], file, records[1].first), {}});
  }
  out.tokens.resize(names.size());
  for (std::size_t r = 2; r < records.size(); ++r) {
    const auto fields = split_fields(records[r].second);
    if (fields.size() != names.size()) {
      malformed(file, records[r].first, "expected " + std::to_string(names.size()) + " fields");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (out.columns[c].kind == AttributeKind::Continuous) {
        double x = 0;
        if (!parse_number(fields[c], x)) malformed(file, records[r].first, "expected a real value");
      }
      out.tokens[c].emplace_back(fields[c]);
    }
  }
  return out;
}

std::vector<std::string> binary_domain(const std::set<std::string>& values, const fs::path& file) {
  if (std::includes(std::set<std::string>{"0", "1"}.begin(), std::set<std::string>{"0", "1"}.end(), values.begin(),
                    values.end())) {
    return {"0", "1"};
  }
  if (values.size() > 2) {
    throw Error(ErrorCode::MalformedLine, file.string() + ": binary column with more than two values");
  }
  return ordered_domain(values);
}

}  // namespace

Graph load_edgelist(const fs::path& graph_file, const std::optional<fs::path>& attr_file) {
  if (!fs::exists(graph_file)) throw Error(ErrorCode::MissingRequiredFile, "missing " + graph_file.string());
  std::vector<WeightedEdge> edges;
  Index n = 0;
  for (const auto& [line_no, line] : read_records(graph_file)) {
    const auto body = trim(line);
    if (body.front() == '#') continue;
    const auto fields = split_fields(body);
    long long i = 0, j = 0;
    double w = 1.0;
    if (fields.size() < 2 || fields.size() > 3 || !parse_number(fields[0], i) || !parse_number(fields[1], j) ||
        (fields.size() == 3 && !parse_number(fields[2], w))) {
      malformed(graph_file, line_no, "expected 'i j [w]'");
    }
    if (i < 0 || j < 0) malformed(graph_file, line_no, "negative node index");
    if (w < 0) {
      throw Error(ErrorCode::NegativeWeight,
                  graph_file.string() + ":" + std::to_string(line_no) + ": weight " + std::string(fields[2]));
    }
    edges.push_back({static_cast<Index>(i), static_cast<Index>(j), w});
    n = std::max<Index>(n, static_cast<Index>(std::max(i, j)) + 1);
  }

  if (!attr_file) return build_graph(n, edges);

  auto attrs = read_attribute_file(*attr_file);
  const auto rows = attrs.tokens.empty() ? Index{0} : static_cast<Index>(attrs.tokens[0].size());
  if (!attrs.tokens.empty()) {
    if (rows < n) {
      throw Error(ErrorCode::InconsistentNodeCount, attr_file->string() + " has " + std::to_string(rows) +
                                                        " rows but edges reference " + std::to_string(n) + " nodes");
    }
    n = rows;
  }
  AttributeTable table;
  for (std::size_t c = 0; c < attrs.columns.size(); ++c) {
    auto& spec = attrs.columns[c];
    auto& tokens = attrs.tokens[c];
    if (spec.kind == AttributeKind::Continuous) {
      Eigen::VectorXd x(n);
      for (Index i = 0; i < n; ++i) x[i] = std::strtod(tokens[static_cast<std::size_t>(i)].c_str(), nullptr);
      table.emplace_back(std::move(x));
    } else {
      const std::set<std::string> values(tokens.begin(), tokens.end());
      spec.domain = spec.kind == AttributeKind::Binary ? binary_domain(values, *attr_file) : ordered_domain(values);
      table.emplace_back(std::move(tokens));
    }
  }
  auto schema = std::make_shared<const AttributeSchema>(std::move(attrs.columns));
  return build_graph(n, edges, std::move(table), std::move(schema));
}

GraphDataset load_edgelist_dataset(const fs::path& directory) {
  if (fs::is_regular_file(directory)) {
    GraphDataset ds;
    ds.name = directory.stem().string();
    auto attrs = directory;
    attrs.replace_extension(".attrs");
    ds.graphs.push_back(load_edgelist(directory, fs::exists(attrs) ? std::optional(attrs) : std::nullopt));
    ds.schema = ds.graphs.front().schema_ptr();
    ds.report.undirected_edges = ds.graphs.front().num_edges();
    return ds;
  }
  if (!fs::is_directory(directory)) throw Error(ErrorCode::MissingRequiredFile, "missing " + directory.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.path().extension() == ".edges") files.push_back(entry.path());
  }
  if (files.empty()) throw Error(ErrorCode::MissingRequiredFile, "no *.edges files in " + directory.string());
  std::sort(files.begin(), files.end());

  GraphDataset ds;
  ds.name = directory.filename().string();
  std::vector<Graph> raw;
  for (const auto& f : files) {
    auto attrs = f;
    attrs.replace_extension(".attrs");
    raw.push_back(load_edgelist(f, fs::exists(attrs) ? std::optional(attrs) : std::nullopt));
  }

  // Merge per-file schemas: same columns and kinds, union of domains.
  auto columns = raw.front().schema().columns();
  std::vector<std::set<std::string>> domains(columns.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& other = raw[k].schema().columns();
    bool same = other.size() == columns.size();
    for (std::size_t c = 0; same && c < columns.size(); ++c) {
      same = other[c].name == columns[c].name && other[c].kind == columns[c].kind;
    }
    if (!same) throw Error(ErrorCode::SchemaMismatch, files[k].string() + ": attribute columns differ from " +
                                                          files.front().string());
    for (std::size_t c = 0; c < columns.size(); ++c) domains[c].insert(other[c].domain.begin(), other[c].domain.end());
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].kind == AttributeKind::Categorical) columns[c].domain = ordered_domain(domains[c]);
    if (columns[c].kind == AttributeKind::Binary) columns[c].domain = binary_domain(domains[c], directory);
  }
  ds.schema = std::make_shared<const AttributeSchema>(std::move(columns));
  for (const auto& g : raw) {
    ds.graphs.push_back(with_schema(g, ds.schema));
    ds.report.undirected_edges += g.num_edges();
  }
  return ds;
}

}  // namespace adoge
