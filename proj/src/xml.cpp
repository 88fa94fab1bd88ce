#include "src/xml.hpp"

#include <cctype>

#include "majorbn/error.hpp"

namespace majorbn::detail {

namespace {

class XmlReader {
 public:
  explicit XmlReader(std::string_view text) : text_(text) {}

  XmlElement parse_document() {
    skip_misc();
    XmlElement root = parse_element();
    skip_misc();
    if (pos_ != text_.size()) error("trailing content after root element");
    return root;
  }

 private:
  [[noreturn]] void error(const std::string& message) const {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorCode::MalformedXml, "line " + std::to_string(line) + ", col " +
                                      std::to_string(column) + ": " + message);
  }

  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  bool consume(std::string_view token) {
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void skip_whitespace() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  // Whitespace, comments, processing instructions and a DOCTYPE line.
  void skip_misc() {
    for (;;) {
      skip_whitespace();
      if (consume("<!--")) {
        std::size_t end = text_.find("-->", pos_);
        if (end == std::string_view::npos) error("unterminated comment");
        pos_ = end + 3;
      } else if (consume("<?")) {
        std::size_t end = text_.find("?>", pos_);
        if (end == std::string_view::npos) error("unterminated declaration");
        pos_ = end + 2;
      } else if (consume("<!DOCTYPE")) {
        std::size_t end = text_.find('>', pos_);
        if (end == std::string_view::npos) error("unterminated DOCTYPE");
        pos_ = end + 1;
      } else {
        return;
      }
    }
  }

  std::string parse_name() {
    std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                      peek() == '_' || peek() == '-' || peek() == ':' ||
                      peek() == '.'))
      ++pos_;
    if (pos_ == start) error("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void append_entity(std::string& out) {
    if (consume("&amp;")) out.push_back('&');
    else if (consume("&lt;")) out.push_back('<');
    else if (consume("&gt;")) out.push_back('>');
    else if (consume("&quot;")) out.push_back('"');
    else if (consume("&apos;")) out.push_back('\'');
    else error("unknown entity reference");
  }

  std::string parse_attribute_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) error("expected a quote");
    const char quote = peek();
    ++pos_;
    std::string value;
    while (!eof() && peek() != quote) {
      if (peek() == '&')
        append_entity(value);
      else
        value.push_back(text_[pos_++]);
    }
    if (eof()) error("unterminated attribute value");
    ++pos_;
    return value;
  }

  XmlElement parse_element() {
    if (!consume("<")) error("expected an element");
    XmlElement element;
    element.name = parse_name();

    for (;;) {
      skip_whitespace();
      if (eof()) error("unterminated start tag");
      if (consume("/>")) return element;
      if (consume(">")) break;
      std::string key = parse_name();
      skip_whitespace();
      if (!consume("=")) error("expected '=' after attribute name");
      skip_whitespace();
      element.attributes.emplace_back(std::move(key), parse_attribute_value());
    }

    // Content until the matching end tag.
    for (;;) {
      if (eof()) error("unterminated element <" + element.name + ">");
      if (consume("<!--")) {
        std::size_t end = text_.find("-->", pos_);
        if (end == std::string_view::npos) error("unterminated comment");
        pos_ = end + 3;
      } else if (text_.substr(pos_, 2) == "</") {
        pos_ += 2;
        std::string closing = parse_name();
        if (closing != element.name)
          error("mismatched end tag </" + closing + "> for <" + element.name +
                ">");
        skip_whitespace();
        if (!consume(">")) error("malformed end tag");
        return element;
      } else if (peek() == '<') {
        element.children.push_back(parse_element());
      } else if (peek() == '&') {
        append_entity(element.text);
      } else {
        element.text.push_back(text_[pos_++]);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

XmlElement parse_xml(std::string_view text) {
  return XmlReader(text).parse_document();
}

}  // namespace majorbn::detail
