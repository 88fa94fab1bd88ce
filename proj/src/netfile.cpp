#include "majorbn/netfile.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "src/xml.hpp"

namespace majorbn {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void syntax_error(std::size_t line, std::size_t column,
                               const std::string& message) {
  fail(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", col " +
                                   std::to_string(column) + ": " + message);
}

// Splits into lines of whitespace-separated tokens; '#' starts a comment.
std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::vector<Token> current;
  std::size_t line = 1, column = 1;
  std::string word;
  std::size_t word_column = 0;
  bool in_comment = false;

  auto flush_word = [&] {
    if (!word.empty()) {
      current.push_back({word, line, word_column});
      word.clear();
    }
  };
  auto flush_line = [&] {
    flush_word();
    if (!current.empty()) lines.push_back(std::move(current));
    current.clear();
  };

  for (char c : text) {
    if (c == '\n') {
      flush_line();
      ++line;
      column = 1;
      in_comment = false;
      continue;
    }
    if (!in_comment) {
      if (c == '#') {
        flush_word();
        in_comment = true;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        flush_word();
      } else {
        if (word.empty()) word_column = column;
        word.push_back(c);
      }
    }
    ++column;
  }
  flush_line();
  return lines;
}

double parse_probability(const Token& token) {
  double value = 0.0;
  const char* begin = token.text.data();
  const char* end = begin + token.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    syntax_error(token.line, token.column,
                 "'" + token.text + "' is not a probability");
  if (!(value >= 0.0 && value <= 1.0))
    syntax_error(token.line, token.column,
                 "probability " + token.text + " outside [0,1]");
  return value;
}

std::string shortest_decimal(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace

Network parse_network(std::string_view text) {
  const std::vector<std::vector<Token>> lines = tokenize(text);
  if (lines.empty())
    fail(ErrorCode::SyntaxError, "line 1, col 1: empty document");

  std::size_t at = 0;
  auto keyword = [&](std::size_t index) -> const std::string& {
    return lines[index][0].text;
  };

  // Header: "majorbn <version>"
  {
    const std::vector<Token>& header = lines[at];
    if (keyword(at) != "majorbn")
      syntax_error(header[0].line, header[0].column,
                   "expected 'majorbn <version>' header");
    if (header.size() != 2)
      syntax_error(header[0].line, header[0].column,
                   "header takes exactly one version number");
    if (header[1].text != std::to_string(kNetFormatVersion))
      syntax_error(header[1].line, header[1].column,
                   "unsupported format version '" + header[1].text + "'");
    ++at;
  }

  if (at >= lines.size() || keyword(at) != "network")
    syntax_error(at < lines.size() ? lines[at][0].line : lines.back()[0].line,
                 1, "expected 'network <name>'");
  if (lines[at].size() != 2)
    syntax_error(lines[at][0].line, lines[at][0].column,
                 "'network' takes exactly one name");
  std::string name = lines[at][1].text;
  ++at;

  std::vector<Variable> variables;
  while (at < lines.size() && keyword(at) == "variable") {
    const std::vector<Token>& decl = lines[at];
    if (decl.size() < 4)
      syntax_error(decl[0].line, decl[0].column,
                   "'variable' needs a name and at least 2 states");
    Variable variable;
    variable.name = decl[1].text;
    for (std::size_t i = 2; i < decl.size(); ++i)
      variable.states.push_back(decl[i].text);
    variables.push_back(std::move(variable));
    ++at;
  }

  auto index_of = [&](const Token& token) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == token.text) return static_cast<int>(i);
    syntax_error(token.line, token.column,
                 "unknown variable '" + token.text + "'");
  };

  std::vector<Cpt> cpts;
  std::vector<Edge> edges;
  while (at < lines.size()) {
    const std::vector<Token>& head = lines[at];
    if (keyword(at) != "cpt")
      syntax_error(head[0].line, head[0].column,
                   "expected 'cpt', got '" + head[0].text + "'");
    if (head.size() < 2)
      syntax_error(head[0].line, head[0].column, "'cpt' needs a child name");
    Cpt cpt;
    cpt.child = index_of(head[1]);
    if (head.size() > 2) {
      if (head[2].text != "|")
        syntax_error(head[2].line, head[2].column,
                     "expected '|' before the parent list");
      if (head.size() == 3)
        syntax_error(head[2].line, head[2].column, "empty parent list");
      for (std::size_t i = 3; i < head.size(); ++i) {
        cpt.parents.push_back(index_of(head[i]));
        edges.emplace_back(head[i].text, head[1].text);
      }
    }
    ++at;
    while (at < lines.size() && keyword(at) == "row") {
      const std::vector<Token>& row_line = lines[at];
      if (row_line.size() < 2)
        syntax_error(row_line[0].line, row_line[0].column, "empty row");
      std::vector<double> row;
      row.reserve(row_line.size() - 1);
      for (std::size_t i = 1; i < row_line.size(); ++i)
        row.push_back(parse_probability(row_line[i]));
      cpt.rows.push_back(std::move(row));
      ++at;
    }
    if (cpt.rows.empty()) {
      const Token& token = at < lines.size() ? lines[at][0] : head[0];
      syntax_error(token.line, token.column,
                   "cpt '" + head[1].text + "' has no rows");
    }
    cpts.push_back(std::move(cpt));
  }

  return Network::build(std::move(variables), edges, std::move(cpts),
                        std::move(name));
}

std::string serialize_network(const Network& net) {
  std::ostringstream out;
  out << "majorbn " << kNetFormatVersion << "\n";
  out << "network " << net.name() << "\n";
  for (const Variable& variable : net.variables()) {
    out << "variable " << variable.name;
    for (const std::string& state : variable.states) out << ' ' << state;
    out << "\n";
  }
  for (int child = 0; child < net.variable_count(); ++child) {
    const Cpt& cpt = net.cpt(child);
    out << "cpt " << net.variable(child).name;
    if (!cpt.parents.empty()) {
      out << " |";
      for (int parent : cpt.parents) out << ' ' << net.variable(parent).name;
    }
    out << "\n";
    for (const std::vector<double>& row : cpt.rows) {
      out << "row";
      for (double p : row) out << ' ' << shortest_decimal(p);
      out << "\n";
    }
  }
  return out.str();
}

Network load_network(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_network(buffer.str());
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream output(path, std::ios::binary);
  if (!output) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  output << serialize_network(net);
}

namespace {

std::vector<std::string> whitespace_split(const std::string& text) {
  std::vector<std::string> words;
  std::istringstream stream(text);
  std::string word;
  while (stream >> word) words.push_back(word);
  return words;
}

}  // namespace

Network import_xdsl(std::string_view xml_text) {
  const detail::XmlElement root = detail::parse_xml(xml_text);
  if (root.name != "smile")
    fail(ErrorCode::UnsupportedElement,
         "root element <" + root.name + ">, expected <smile>");
  const detail::XmlElement* nodes = root.find_child("nodes");
  if (!nodes) fail(ErrorCode::MalformedXml, "<smile> has no <nodes> section");
  for (const detail::XmlElement& section : root.children)
    if (section.name != "nodes" && section.name != "extensions")
      fail(ErrorCode::UnsupportedElement, "<" + section.name + ">");

  std::vector<Variable> variables;
  std::vector<Edge> edges;
  std::vector<Cpt> raw_cpts;  // rows filled after cardinalities are known

  auto variable_index = [&](const std::string& name) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == name) return static_cast<int>(i);
    fail(ErrorCode::UnknownVariable, "parent '" + name + "' is not declared");
  };

  for (const detail::XmlElement& node : nodes->children) {
    if (node.name != "cpt")
      fail(ErrorCode::UnsupportedElement,
           "<" + node.name + "> (only chance nodes are supported)");
    const std::string* id = node.find_attribute("id");
    if (!id) fail(ErrorCode::MalformedXml, "<cpt> without id attribute");

    Variable variable;
    variable.name = *id;
    Cpt cpt;
    cpt.child = static_cast<int>(variables.size());
    std::vector<double> flat;

    for (const detail::XmlElement& part : node.children) {
      if (part.name == "state") {
        const std::string* state_id = part.find_attribute("id");
        if (!state_id)
          fail(ErrorCode::MalformedXml,
               "<state> without id in node '" + *id + "'");
        variable.states.push_back(*state_id);
      } else if (part.name == "parents") {
        for (const std::string& parent : whitespace_split(part.text)) {
          cpt.parents.push_back(variable_index(parent));
          edges.emplace_back(parent, *id);
        }
      } else if (part.name == "probabilities") {
        for (const std::string& word : whitespace_split(part.text)) {
          double value = 0.0;
          auto [ptr, ec] = std::from_chars(
              word.data(), word.data() + word.size(), value);
          if (ec != std::errc() || ptr != word.data() + word.size() ||
              !(value >= 0.0 && value <= 1.0))
            fail(ErrorCode::MalformedXml, "bad probability '" + word +
                                              "' in node '" + *id + "'");
          flat.push_back(value);
        }
      } else {
        fail(ErrorCode::UnsupportedElement,
             "<" + part.name + "> inside <cpt id=\"" + *id + "\">");
      }
    }

    const std::size_t card = variable.states.size();
    if (card < 2)
      fail(ErrorCode::InvalidVariable,
           "node '" + *id + "' needs at least 2 states");
    if (flat.empty() || flat.size() % card != 0)
      fail(ErrorCode::CptShapeMismatch,
           "probability count of node '" + *id + "' is not a multiple of " +
               std::to_string(card));
    // XDSL lists the child state fastest; chunking preserves the row-major
    // parent order.
    for (std::size_t offset = 0; offset < flat.size(); offset += card)
      cpt.rows.emplace_back(flat.begin() + offset,
                            flat.begin() + offset + card);

    variables.push_back(std::move(variable));
    raw_cpts.push_back(std::move(cpt));
  }

  const std::string* net_id = root.find_attribute("id");
  return Network::build(std::move(variables), edges, std::move(raw_cpts),
                        net_id ? *net_id : "imported");
}

Network load_xdsl(const std::string& path) {
  std::ifstream input(path, std::ios::binary);
  if (!input) fail(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return import_xdsl(buffer.str());
}

}  // namespace majorbn
