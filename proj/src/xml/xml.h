// Minimal non-validating XML parser: enough of the grammar for uncompressed
// MusicXML (elements, attributes, text, comments, CDATA, DOCTYPE skip,
// predefined and numeric entities). Tracks line numbers for error reporting.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace melograph {

struct XmlNode {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;  // concatenated character data of this element
  int line = 0;      // 1-based line of the start tag

  /// First attribute with the given name, or empty string.
  std::string attribute(std::string_view attr_name) const;
  bool hasAttribute(std::string_view attr_name) const;

  /// First child element with the given name, or nullptr.
  const XmlNode* child(std::string_view child_name) const;
  bool hasChild(std::string_view child_name) const { return child(child_name) != nullptr; }

  /// All child elements with the given name.
  std::vector<const XmlNode*> childrenNamed(std::string_view child_name) const;

  /// Text of the first child with the given name, whitespace-trimmed;
  /// fallback if the child is absent.
  std::string childText(std::string_view child_name, const std::string& fallback = "") const;

  /// Trimmed own text.
  std::string trimmedText() const;
};

/// Parses a complete document and returns the root element.
/// Throws ParseError with line context on malformed input.
XmlNode parseXml(std::string_view document);

/// Escapes the five predefined entities for text/attribute serialization.
std::string xmlEscape(std::string_view text);

}  // namespace melograph
