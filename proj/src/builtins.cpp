#include <array>
#include <string>

#include "rectsub/scene.hpp"

namespace rectsub {
namespace {

struct Builtin {
  const char* name;
  const char* document;
};

const std::array<Builtin, 12> kBuiltins = {{
    {"radial-r4", R"json({
  "name": "radial-r4",
  "description": "Unit radial field E/|E| on E^4 minus a ball; anti-torqued with f = 1/|x|.",
  "ambient": {
    "dim": 4,
    "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x2/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x3/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x4/sqrt(x1^2+x2^2+x3^2+x4^2)"
  ],
  "checks": ["classify", "geodesic", "ambient-decomposition"],
  "points": 200,
  "expected": {
    "verdict": "anti-torqued",
    "f": "1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "status": {"classify": "pass", "geodesic": "pass", "ambient-decomposition": "pass"}
  }
})json"},
    {"clifford-torus", R"json({
  "name": "clifford-torus",
  "description": "Clifford torus S^1(r) x S^1(r), r = 1/sqrt(2), in E^4 with the unit radial field; V is normal.",
  "ambient": {
    "dim": 4,
    "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x2/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x3/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x4/sqrt(x1^2+x2^2+x3^2+x4^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["a", "b"],
    "immersion": ["sqrt(0.5)*cos(a)", "sqrt(0.5)*sin(a)", "sqrt(0.5)*cos(b)", "sqrt(0.5)*sin(b)"],
    "domain": [[0, 6.2], [0, 6.2]]
  },
  "checks": ["classify", "gauss", "tangential-theorem"],
  "expected": {
    "verdict": "anti-torqued",
    "status": {"classify": "pass", "gauss": "pass", "tangential-theorem": "pass"}
  }
})json"},
    {"tangent-developable", R"json({
  "name": "tangent-developable",
  "description": "Tangent developable of the great circle (cos s, sin s, 0) in E^3, t > 0; V is tangent.",
  "ambient": {
    "dim": 3,
    "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2)",
    "x2/sqrt(x1^2+x2^2+x3^2)",
    "x3/sqrt(x1^2+x2^2+x3^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["s", "t"],
    "immersion": ["cos(s) - t*sin(s)", "sin(s) + t*cos(s)", "0"],
    "domain": [[0, 6.2], [0.1, 2]]
  },
  "checks": ["classify", "gauss", "normal-theorem", "rectifying"],
  "expected": {
    "verdict": "anti-torqued",
    "status": {"classify": "pass", "gauss": "pass", "normal-theorem": "pass", "rectifying": "pass"}
  }
})json"},
    {"cone", R"json({
  "name": "cone",
  "description": "Cone (r cos(th), r sin(th), r) in E^3; the radial field is tangent, det A = 0.",
  "ambient": {
    "dim": 3,
    "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2)",
    "x2/sqrt(x1^2+x2^2+x3^2)",
    "x3/sqrt(x1^2+x2^2+x3^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["r", "th"],
    "immersion": ["r*cos(th)", "r*sin(th)", "r"],
    "domain": [[0.5, 2], [0, 6.2]]
  },
  "checks": ["classify", "gauss", "normal-theorem", "rectifying"],
  "points": 100,
  "expected": {
    "verdict": "anti-torqued",
    "status": {"classify": "pass", "gauss": "pass", "normal-theorem": "pass", "rectifying": "pass"}
  }
})json"},
    {"rectifying-psi", R"json({
  "name": "rectifying-psi",
  "description": "Proper rectifying surface sqrt(1+s^2) Omega in E^4 with |V^T| = s/sqrt(1+s^2) = tanh(asinh(s)).",
  "ambient": {
    "dim": 4,
    "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x2/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x3/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x4/sqrt(x1^2+x2^2+x3^2+x4^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["s", "t"],
    "immersion": ["0.6*s*cos(t/0.6)", "0.6*s*sin(t/0.6)", "0.8*s", "1"],
    "domain": [[0.5, 3], [0, 3]]
  },
  "curve": {"start": [1, 1.5], "length": 1.5, "step": 0.01},
  "checks": ["classify", "gauss", "rectifying", "warp-ode", "warp-fit"],
  "expected": {
    "verdict": "anti-torqued",
    "lambda": "s/sqrt(1+s^2)",
    "status": {"classify": "pass", "gauss": "pass", "rectifying": "pass", "warp-ode": "pass", "warp-fit": "pass"}
  }
})json"},
    {"warped-exp", R"json({
  "name": "warped-exp",
  "description": "Warped product ds^2 + e^(2s)(dy1^2 + dy2^2) with V = d/ds; anti-torqued with f = 1.",
  "ambient": {
    "dim": 3,
    "variables": ["s", "y1", "y2"],
    "metric": [["1", "0", "0"], ["0", "exp(s)^2", "0"], ["0", "0", "exp(s)^2"]],
    "domain": [[0, 1], [-1, 1], [-1, 1]]
  },
  "field": ["1", "0", "0"],
  "warped": {"lambda": "exp(s)", "fiber": [["1", "0"], ["0", "1"]]},
  "checks": ["classify", "geodesic", "ambient-decomposition", "warp-converse"],
  "expected": {
    "verdict": "anti-torqued",
    "f": "1",
    "status": {"classify": "pass", "geodesic": "pass", "ambient-decomposition": "pass", "warp-converse": "pass"}
  }
})json"},
    {"warped-cosh", R"json({
  "name": "warped-cosh",
  "description": "Warped product ds^2 + cosh(s)^2 (dy1^2 + dy2^2) with V = d/ds; anti-torqued with f = tanh(s).",
  "ambient": {
    "dim": 3,
    "variables": ["s", "y1", "y2"],
    "metric": [["1", "0", "0"], ["0", "cosh(s)^2", "0"], ["0", "0", "cosh(s)^2"]],
    "domain": [[0.05, 1], [-1, 1], [-1, 1]]
  },
  "field": ["1", "0", "0"],
  "warped": {"lambda": "cosh(s)", "fiber": [["1", "0"], ["0", "1"]]},
  "checks": ["classify", "geodesic", "ambient-decomposition", "warp-converse"],
  "expected": {
    "verdict": "anti-torqued",
    "f": "tanh(s)",
    "status": {"classify": "pass", "geodesic": "pass", "ambient-decomposition": "pass", "warp-converse": "pass"}
  }
})json"},
    {"hypersphere", R"json({
  "name": "hypersphere",
  "description": "Round S^3 of radius 2 in E^4 with the unit radial field; V is normal, A_V = -f Id.",
  "ambient": {
    "dim": 4,
    "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x2/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x3/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x4/sqrt(x1^2+x2^2+x3^2+x4^2)"
  ],
  "submanifold": {
    "dim": 3,
    "variables": ["a", "b", "c"],
    "immersion": ["2*sin(a)*sin(b)*cos(c)", "2*sin(a)*sin(b)*sin(c)", "2*sin(a)*cos(b)", "2*cos(a)"],
    "domain": [[0.3, 2.8], [0.3, 2.8], [0, 6.2]]
  },
  "checks": ["classify", "gauss", "tangential-theorem"],
  "expected": {
    "verdict": "anti-torqued",
    "status": {"classify": "pass", "gauss": "pass", "tangential-theorem": "pass"}
  }
})json"},
    {"unit-sphere", R"json({
  "name": "unit-sphere",
  "description": "Unit S^2 in E^3 with the radial axis; umbilic but not rectifying (negative control).",
  "ambient": {
    "dim": 3,
    "metric": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2)",
    "x2/sqrt(x1^2+x2^2+x3^2)",
    "x3/sqrt(x1^2+x2^2+x3^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["a", "b"],
    "immersion": ["sin(a)*cos(b)", "sin(a)*sin(b)", "cos(a)"],
    "domain": [[0.3, 2.8], [0, 6.2]]
  },
  "checks": ["gauss", "rectifying", "tangential-theorem"],
  "expected": {
    "status": {"gauss": "pass", "rectifying": "fail", "tangential-theorem": "pass"}
  }
})json"},
    {"small-sphere-e4", R"json({
  "name": "small-sphere-e4",
  "description": "Cone over a small 2-sphere in E^4 with induced metric ds^2 + s^2/(1+s^2) dt^2; not rectifying.",
  "ambient": {
    "dim": 4,
    "metric": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "domain": [[-3, 3], [-3, 3], [-3, 3], [-3, 3]],
    "exclude_radius": 0.1
  },
  "field": [
    "x1/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x2/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x3/sqrt(x1^2+x2^2+x3^2+x4^2)",
    "x4/sqrt(x1^2+x2^2+x3^2+x4^2)"
  ],
  "submanifold": {
    "dim": 2,
    "variables": ["s", "t"],
    "immersion": [
      "sqrt(1+s^2)*0.5*sin(2*atan(s))*cos(t)",
      "sqrt(1+s^2)*0.5*sin(2*atan(s))*sin(t)",
      "sqrt(1+s^2)*0.5*cos(2*atan(s))",
      "sqrt(1+s^2)*sqrt(3)/2"
    ],
    "domain": [[0.5, 3], [0, 6.2]]
  },
  "checks": ["gauss", "rectifying"],
  "expected": {
    "status": {"gauss": "pass", "rectifying": "fail"}
  }
})json"},
    {"torqued-leaf", R"json({
  "name": "torqued-leaf",
  "description": "Twisted product ds^2 + l^2 (dy1^2 + dy2^2), l = exp(s + 0.3 y1), V = l d/ds torqued; M = {y1 = 0.25} holds V tangent and W normal.",
  "ambient": {
    "dim": 3,
    "variables": ["s", "y1", "y2"],
    "metric": [["1", "0", "0"], ["0", "exp(s+0.3*y1)^2", "0"], ["0", "0", "exp(s+0.3*y1)^2"]],
    "domain": [[0, 1], [-1, 1], [-1, 1]]
  },
  "field": ["exp(s+0.3*y1)", "0", "0"],
  "submanifold": {
    "dim": 2,
    "variables": ["s", "t"],
    "immersion": ["s", "0.25", "t"],
    "domain": [[0, 1], [-1, 1]]
  },
  "checks": ["classify", "gauss", "torqued"],
  "expected": {
    "verdict": "torqued",
    "status": {"classify": "pass", "gauss": "pass", "torqued": "pass"}
  }
})json"},
    {"torqued-fiber", R"json({
  "name": "torqued-fiber",
  "description": "Same twisted product with M = {s = 0.5}; V is normal and W^T != 0.",
  "ambient": {
    "dim": 3,
    "variables": ["s", "y1", "y2"],
    "metric": [["1", "0", "0"], ["0", "exp(s+0.3*y1)^2", "0"], ["0", "0", "exp(s+0.3*y1)^2"]],
    "domain": [[0, 1], [-1, 1], [-1, 1]]
  },
  "field": ["exp(s+0.3*y1)", "0", "0"],
  "submanifold": {
    "dim": 2,
    "variables": ["p", "q"],
    "immersion": ["0.5", "p", "q"],
    "domain": [[-1, 1], [-1, 1]]
  },
  "checks": ["classify", "gauss", "torqued"],
  "expected": {
    "verdict": "torqued",
    "status": {"classify": "pass", "gauss": "pass", "torqued": "pass"}
  }
})json"},
}};

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& b : kBuiltins) out.emplace_back(b.name);
    return out;
  }();
  return names;
}

std::string builtin_document(std::string_view name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return b.document;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown built-in scene '" + std::string(name) + "'");
}

}  // namespace rectsub
