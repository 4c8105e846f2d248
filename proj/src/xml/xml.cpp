#include "xml/xml.h"

#include <cctype>

#include "core/errors.h"

namespace melograph {

namespace {

bool isNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}

bool isNameChar(char c) {
  return isNameStart(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
         c == '.';
}

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

class Cursor {
 public:
  explicit Cursor(std::string_view doc) : doc_(doc) {}

  bool atEnd() const { return pos_ >= doc_.size(); }
  char peek() const { return doc_[pos_]; }
  int line() const { return line_; }

  char next() {
    char c = doc_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  bool startsWith(std::string_view prefix) const {
    return doc_.compare(pos_, prefix.size(), prefix) == 0;
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && !atEnd(); ++i) next();
  }

  void skipWhitespace() {
    while (!atEnd() && std::isspace(static_cast<unsigned char>(peek()))) next();
  }

  /// Consumes up to and including the delimiter; error if missing.
  void skipUntil(std::string_view delim, const char* what) {
    while (!atEnd()) {
      if (startsWith(delim)) {
        advance(delim.size());
        return;
      }
      next();
    }
    throw ParseError(line_, std::string("unterminated ") + what);
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

 private:
  std::string_view doc_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view doc) : cur_(doc) {}

  XmlNode parseDocument() {
    skipBom();
    skipMisc();
    if (cur_.atEnd()) cur_.fail("document has no root element");
    XmlNode root = parseElement();
    skipMisc();
    if (!cur_.atEnd()) cur_.fail("trailing content after root element");
    return root;
  }

 private:
  void skipBom() {
    if (cur_.startsWith("\xEF\xBB\xBF")) cur_.advance(3);
  }

  // Prolog, comments, processing instructions, DOCTYPE, whitespace.
  void skipMisc() {
    for (;;) {
      cur_.skipWhitespace();
      if (cur_.startsWith("<?")) {
        cur_.advance(2);
        cur_.skipUntil("?>", "processing instruction");
      } else if (cur_.startsWith("<!--")) {
        cur_.advance(4);
        cur_.skipUntil("-->", "comment");
      } else if (cur_.startsWith("<!DOCTYPE")) {
        skipDoctype();
      } else {
        return;
      }
    }
  }

  void skipDoctype() {
    cur_.advance(9);
    int bracket_depth = 0;
    while (!cur_.atEnd()) {
      char c = cur_.next();
      if (c == '[') ++bracket_depth;
      if (c == ']') --bracket_depth;
      if (c == '>' && bracket_depth == 0) return;
    }
    cur_.fail("unterminated DOCTYPE");
  }

  std::string parseName() {
    if (cur_.atEnd() || !isNameStart(cur_.peek())) cur_.fail("expected name");
    std::string name;
    while (!cur_.atEnd() && isNameChar(cur_.peek())) name += cur_.next();
    return name;
  }

  std::string parseEntity() {
    // '&' already consumed.
    std::string entity;
    while (!cur_.atEnd() && cur_.peek() != ';') {
      entity += cur_.next();
      if (entity.size() > 10) cur_.fail("malformed entity reference");
    }
    if (cur_.atEnd()) cur_.fail("unterminated entity reference");
    cur_.next();  // ';'
    if (entity == "lt") return "<";
    if (entity == "gt") return ">";
    if (entity == "amp") return "&";
    if (entity == "quot") return "\"";
    if (entity == "apos") return "'";
    if (!entity.empty() && entity[0] == '#') {
      int base = 10;
      std::size_t start = 1;
      if (entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X')) {
        base = 16;
        start = 2;
      }
      try {
        long code = std::stol(entity.substr(start), nullptr, base);
        if (code <= 0 || code > 0x10FFFF) cur_.fail("character reference out of range");
        return encodeUtf8(static_cast<unsigned long>(code));
      } catch (const MelographError&) {
        throw;
      } catch (const std::exception&) {
        cur_.fail("malformed character reference '&" + entity + ";'");
      }
    }
    cur_.fail("unknown entity '&" + entity + ";'");
  }

  static std::string encodeUtf8(unsigned long code) {
    std::string out;
    if (code < 0x80) {
      out += static_cast<char>(code);
    } else if (code < 0x800) {
      out += static_cast<char>(0xC0 | (code >> 6));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else if (code < 0x10000) {
      out += static_cast<char>(0xE0 | (code >> 12));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (code >> 18));
      out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    }
    return out;
  }

  std::string parseAttributeValue() {
    if (cur_.atEnd() || (cur_.peek() != '"' && cur_.peek() != '\'')) {
      cur_.fail("expected quoted attribute value");
    }
    char quote = cur_.next();
    std::string value;
    while (!cur_.atEnd() && cur_.peek() != quote) {
      char c = cur_.next();
      if (c == '&') {
        value += parseEntity();
      } else if (c == '<') {
        cur_.fail("'<' in attribute value");
      } else {
        value += c;
      }
    }
    if (cur_.atEnd()) cur_.fail("unterminated attribute value");
    cur_.next();  // closing quote
    return value;
  }

  XmlNode parseElement() {
    // Caller guarantees '<' is next and it is not a special construct.
    int start_line = cur_.line();
    cur_.next();  // '<'
    XmlNode node;
    node.line = start_line;
    node.name = parseName();
    for (;;) {
      cur_.skipWhitespace();
      if (cur_.atEnd()) cur_.fail("unterminated start tag <" + node.name + ">");
      if (cur_.peek() == '>') {
        cur_.next();
        parseContent(node);
        return node;
      }
      if (cur_.startsWith("/>")) {
        cur_.advance(2);
        return node;
      }
      std::string attr_name = parseName();
      cur_.skipWhitespace();
      if (cur_.atEnd() || cur_.peek() != '=') cur_.fail("expected '=' after attribute name");
      cur_.next();
      cur_.skipWhitespace();
      node.attributes.emplace_back(attr_name, parseAttributeValue());
    }
  }

  void parseContent(XmlNode& node) {
    for (;;) {
      if (cur_.atEnd()) cur_.fail("unexpected end of document inside <" + node.name + ">");
      if (cur_.peek() == '<') {
        if (cur_.startsWith("</")) {
          cur_.advance(2);
          std::string close = parseName();
          if (close != node.name) {
            cur_.fail("mismatched close tag </" + close + "> for <" + node.name + ">");
          }
          cur_.skipWhitespace();
          if (cur_.atEnd() || cur_.peek() != '>') cur_.fail("malformed close tag");
          cur_.next();
          return;
        }
        if (cur_.startsWith("<!--")) {
          cur_.advance(4);
          cur_.skipUntil("-->", "comment");
          continue;
        }
        if (cur_.startsWith("<![CDATA[")) {
          cur_.advance(9);
          while (!cur_.atEnd() && !cur_.startsWith("]]>")) node.text += cur_.next();
          if (cur_.atEnd()) cur_.fail("unterminated CDATA section");
          cur_.advance(3);
          continue;
        }
        if (cur_.startsWith("<?")) {
          cur_.advance(2);
          cur_.skipUntil("?>", "processing instruction");
          continue;
        }
        node.children.push_back(parseElement());
        continue;
      }
      char c = cur_.next();
      if (c == '&') {
        node.text += parseEntity();
      } else {
        node.text += c;
      }
    }
  }

  Cursor cur_;
};

}  // namespace

std::string XmlNode::attribute(std::string_view attr_name) const {
  for (const auto& [name_, value] : attributes) {
    if (name_ == attr_name) return value;
  }
  return "";
}

bool XmlNode::hasAttribute(std::string_view attr_name) const {
  for (const auto& [name_, value] : attributes) {
    if (name_ == attr_name) return true;
  }
  return false;
}

const XmlNode* XmlNode::child(std::string_view child_name) const {
  for (const XmlNode& c : children) {
    if (c.name == child_name) return &c;
  }
  return nullptr;
}

std::vector<const XmlNode*> XmlNode::childrenNamed(std::string_view child_name) const {
  std::vector<const XmlNode*> out;
  for (const XmlNode& c : children) {
    if (c.name == child_name) out.push_back(&c);
  }
  return out;
}

std::string XmlNode::childText(std::string_view child_name, const std::string& fallback) const {
  const XmlNode* c = child(child_name);
  return c ? c->trimmedText() : fallback;
}

std::string XmlNode::trimmedText() const { return trim(text); }

XmlNode parseXml(std::string_view document) { return Parser(document).parseDocument(); }

std::string xmlEscape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace melograph
