#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace majorbn::detail {

// Just enough XML for GeNIe's XDSL files: elements, attributes, text,
// comments, declarations and the five predefined entities. No namespaces,
// no DTD content, no CDATA.
struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlElement> children;
  std::string text;  // concatenated character data of this element

  const XmlElement* find_child(std::string_view child_name) const {
    for (const XmlElement& child : children)
      if (child.name == child_name) return &child;
    return nullptr;
  }

  const std::string* find_attribute(std::string_view attribute_name) const {
    for (const auto& [key, value] : attributes)
      if (key == attribute_name) return &value;
    return nullptr;
  }
};

// Returns the document's root element; throws MalformedXml with a
// line/column position on any structural problem.
XmlElement parse_xml(std::string_view text);

}  // namespace majorbn::detail
