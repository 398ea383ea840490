#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hfgraph/dstruct.hpp"

namespace hfgraph {

struct PlumbingVertex {
  std::string id;
  int genus = 0;
  int euler = 0;
  int boundary = 0;  // extra open boundary components
};

struct PlumbingEdge {
  std::size_t v = 0, w = 0;
  int sign = 1;
};

struct PlumbingGraph {
  std::vector<PlumbingVertex> vertices;
  std::vector<PlumbingEdge> edges;

  std::vector<std::size_t> degree() const;  // loops count twice
  int total_boundary() const;
  std::size_t first_betti() const;  // edges - vertices + 1 for a connected graph
};

struct ParseError : std::runtime_error {
  int line = 0, column = 0;
  ParseError(int line, int column, const std::string& msg);
};
struct NegativeGenus : ParseError {
  using ParseError::ParseError;
};
struct Disconnected : ParseError {
  using ParseError::ParseError;
};

// Format: `vertex <id> genus=<int> euler=<int> [boundary=<int>]`,
// `edge <id> <id> [sign=+|-]`, `#` comments, blank lines.
PlumbingGraph parse(std::string_view text);
PlumbingGraph parse_file(const std::string& path);
std::string format(const PlumbingGraph& g);

struct H1Order {
  enum Kind { Finite, Infinite } kind = Infinite;
  boost::multiprecision::cpp_int value;  // set when Finite
};

// |det| of the intersection matrix for closed genus-zero trees; any genus,
// cycle or open boundary gives a free part and Infinite.
H1Order h1_order(const PlumbingGraph& g);

struct Step {
  enum Kind { BuildVertexBlock, Twist, Cap, Flip, GlueEdge, SelfGlueEdge } kind;
  std::size_t vertex = 0;  // BuildVertexBlock, Twist, Cap
  std::size_t edge = 0;    // Flip, GlueEdge, SelfGlueEdge
  int end = 0;             // Flip: which end of the edge (0 = v, 1 = w)
  int arc = 0;             // Twist: arc of the twist; Flip: fiber before the flip
  int sign = 0;            // Twist, GlueEdge, SelfGlueEdge
};

struct AssemblyPlan {
  std::vector<Step> steps;
  std::vector<bool> tree_edge;
};

std::string step_string(const PlumbingGraph& g, const Step& s);

// Vertex block sizes steer the gluing order; without them a rough estimate
// from genus, degree and Euler number is used.
AssemblyPlan plan(const PlumbingGraph& g, const std::vector<std::size_t>& vertex_sizes = {});

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComputeOptions {
  std::size_t generator_cap = 5'000'000;
  // Called after every executed step with the generator count of the module
  // the step produced.
  std::function<void(const Step&, std::size_t)> trace;
  // Vertex boundary that receives the Euler twists; clamped to the vertex's
  // open boundaries.
  int twist_site = 0;
};

// Open boundaries of a bordered result, in order, with the vertex they
// belong to.
struct OpenBoundary {
  std::size_t vertex;
  int fiber;
};

struct ComputeResult {
  std::optional<std::size_t> rank;  // closed graphs
  DModule module;                   // bordered graphs: reduced multimodule
  std::vector<OpenBoundary> open;
  AssemblyPlan executed;
};

ComputeResult compute(const PlumbingGraph& g, const ComputeOptions& opt = {});

// The trivial circle bundle over a genus g surface with k >= 1 boundary
// components, before any twist. Boundary fibers are reported in the module.
DModule trivial_bundle(int genus, int k);

}  // namespace hfgraph
