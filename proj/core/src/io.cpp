#include "flagbound/io.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "flagbound/error.hpp"

namespace flagbound {

std::string_view trim(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r' || text.back() == '\n')) {
    text.remove_suffix(1);
  }
  return text;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

namespace {

std::vector<int> parse_ints(std::string_view text) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    if (i >= text.size()) break;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc{}) throw Error(ErrorKind::Parse, "expected integer in '" + std::string(text) + "'");
    i = static_cast<std::size_t>(ptr - text.data());
    out.push_back(value);
  }
  return out;
}

std::vector<int> one_based_edge(std::string_view text) {
  auto v = parse_ints(text);
  for (int& x : v) --x;
  return v;
}

}  // namespace

std::vector<Hypergraph> read_hypergraphs(std::istream& in) {
  std::vector<Hypergraph> out;
  std::string line;
  bool have_header = false;
  int r = 0;
  int n = 0;
  std::vector<std::vector<int>> edges;
  int line_no = 0;
  auto finish = [&] {
    if (have_header) out.push_back(Hypergraph::from_lists(r, n, edges));
    have_header = false;
    edges.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    if (view == "---") {
      finish();
      continue;
    }
    if (!have_header) {
      auto header = parse_ints(view);
      if (header.size() != 2) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected header 'r n'");
      }
      r = header[0];
      n = header[1];
      have_header = true;
    } else {
      auto e = one_based_edge(view);
      if (static_cast<int>(e.size()) != r) {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": edge does not have r vertices");
      }
      edges.push_back(std::move(e));
    }
  }
  finish();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Hypergraph> read_hypergraph_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_hypergraphs(in);
}

namespace {

void write_edge(std::ostream& out, VertexMask e) {
  bool first = true;
  for (; e; e &= e - 1) {
    if (!first) out << ' ';
    out << std::countr_zero(e) + 1;
    first = false;
  }
}

}  // namespace

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.uniformity() << ' ' << h.order() << '\n';
  for (VertexMask e : h.edges()) {
    write_edge(out, e);
    out << '\n';
  }
}

void write_hypergraphs(std::ostream& out, std::span<const Hypergraph> graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (i > 0) out << "---\n";
    write_hypergraph(out, graphs[i]);
  }
}

std::string format_inline(const Hypergraph& h) {
  std::ostringstream out;
  out << h.uniformity() << ' ' << h.order() << " :";
  bool first = true;
  for (VertexMask e : h.edges()) {
    out << (first ? " " : ", ");
    write_edge(out, e);
    first = false;
  }
  return out.str();
}

Hypergraph parse_inline(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw Error(ErrorKind::Parse, "inline graph needs 'r n : edges'");
  auto header = parse_ints(text.substr(0, colon));
  if (header.size() != 2) throw Error(ErrorKind::Parse, "inline graph header must be 'r n'");
  std::vector<std::vector<int>> edges;
  auto body = trim(text.substr(colon + 1));
  if (!body.empty()) {
    for (auto part : split(body, ',')) {
      auto e = one_based_edge(part);
      if (static_cast<int>(e.size()) != header[0]) throw Error(ErrorKind::Parse, "inline edge does not have r vertices");
      edges.push_back(std::move(e));
    }
  }
  return Hypergraph::from_lists(header[0], header[1], edges);
}

}  // namespace flagbound
