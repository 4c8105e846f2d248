#include "graph/graph_io.h"

#include <cstdio>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "xml/xml.h"

namespace melograph {

namespace {

std::string formatG(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.9g", value);
  return buffer;
}

}  // namespace

std::string graphToGraphml(const SegmentGraph& graph) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  out << "  <key id=\"expectancy\" for=\"node\" attr.name=\"expectancy\" attr.type=\"double\"/>\n";
  out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
  out << "  <key id=\"k\" for=\"graph\" attr.name=\"k\" attr.type=\"int\"/>\n";
  out << "  <graph id=\"" << xmlEscape(graph.piece_id) << "\" edgedefault=\"undirected\">\n";
  out << "    <data key=\"k\">" << graph.k << "</data>\n";
  for (const GraphNode& node : graph.nodes) {
    out << "    <node id=\"" << xmlEscape(node.id) << "\">";
    out << "<data key=\"label\">" << xmlEscape(node.label) << "</data>";
    out << "<data key=\"expectancy\">" << formatG(node.expectancy) << "</data>";
    out << "</node>\n";
  }
  for (const GraphEdge& edge : graph.edges) {
    out << "    <edge source=\"" << xmlEscape(graph.nodes[edge.u].id) << "\" target=\""
        << xmlEscape(graph.nodes[edge.v].id) << "\"><data key=\"weight\">"
        << formatG(edge.weight) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

SegmentGraph graphFromGraphml(const std::string& text) {
  XmlNode root = parseXml(text);
  if (root.name != "graphml") throw ParseError(root.line, "not a GraphML document");
  const XmlNode* g = root.child("graph");
  if (!g) throw ParseError(root.line, "missing <graph> element");

  SegmentGraph graph;
  graph.piece_id = g->attribute("id");
  std::map<std::string, std::size_t> index_of;
  for (const XmlNode& item : g->children) {
    if (item.name == "data" && item.attribute("key") == "k") {
      graph.k = std::stoi(item.trimmedText());
    } else if (item.name == "node") {
      GraphNode node;
      node.id = item.attribute("id");
      for (const XmlNode* data : item.childrenNamed("data")) {
        if (data->attribute("key") == "label") node.label = data->trimmedText();
        if (data->attribute("key") == "expectancy") {
          node.expectancy = std::stod(data->trimmedText());
        }
      }
      index_of[node.id] = graph.nodes.size();
      graph.nodes.push_back(node);
    } else if (item.name == "edge") {
      auto u = index_of.find(item.attribute("source"));
      auto v = index_of.find(item.attribute("target"));
      if (u == index_of.end() || v == index_of.end()) {
        throw ParseError(item.line, "edge references unknown node");
      }
      GraphEdge edge;
      edge.u = std::min(u->second, v->second);
      edge.v = std::max(u->second, v->second);
      for (const XmlNode* data : item.childrenNamed("data")) {
        if (data->attribute("key") == "weight") edge.weight = std::stod(data->trimmedText());
      }
      graph.edges.push_back(edge);
    }
  }
  return graph;
}

std::string graphToDot(const SegmentGraph& graph) {
  std::ostringstream out;
  out << "graph \"" << graph.piece_id << "\" {\n";
  for (const GraphNode& node : graph.nodes) {
    out << "  \"" << node.id << "\" [label=\"" << node.label << "\" expectancy=\""
        << formatG(node.expectancy) << "\"];\n";
  }
  for (const GraphEdge& edge : graph.edges) {
    out << "  \"" << graph.nodes[edge.u].id << "\" -- \"" << graph.nodes[edge.v].id
        << "\" [weight=\"" << formatG(edge.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string graphToAdjacencyJson(const SegmentGraph& graph) {
  nlohmann::json j;
  j["piece_id"] = graph.piece_id;
  j["k"] = graph.k;
  j["connected"] = graph.connected();
  nlohmann::json nodes = nlohmann::json::array();
  for (const GraphNode& node : graph.nodes) {
    nodes.push_back({{"id", node.id}, {"label", node.label}, {"expectancy", node.expectancy}});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const GraphEdge& edge : graph.edges) {
    edges.push_back({{"source", graph.nodes[edge.u].id},
                     {"target", graph.nodes[edge.v].id},
                     {"weight", edge.weight}});
  }
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j.dump(2) + "\n";
}

}  // namespace melograph
