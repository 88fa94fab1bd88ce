#pragma once

#include <string>
#include <string_view>

#include "majorbn/network.hpp"

namespace majorbn {

// Version written and accepted by the native reader.
inline constexpr int kNetFormatVersion = 1;

// Parses the native line-oriented network format (see docs/netformat.md).
// Syntax errors carry "line L, col C"; structural problems surface as the
// usual network validation errors.
Network parse_network(std::string_view text);

// Canonical text form: declaration order throughout, probabilities as
// shortest round-trip decimals. parse(serialize(net)) reproduces the
// network exactly; serializing equal networks yields identical text.
std::string serialize_network(const Network& net);

Network load_network(const std::string& path);
void save_network(const Network& net, const std::string& path);

// Imports the chance-node subset of GeNIe's XDSL format: <cpt> elements
// with state lists, parent lists and whitespace-separated probabilities.
// XDSL flattens each table with the child state fastest and parents
// row-major (last parent next), which maps one-to-one onto our row-major
// rows. Anything beyond chance nodes raises UnsupportedElement.
Network import_xdsl(std::string_view xml_text);

Network load_xdsl(const std::string& path);

}  // namespace majorbn
