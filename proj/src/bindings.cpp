// Python bindings for the main operations.  The module mirrors the CLI verbs:
// counting, enumeration, the correspondence, lattice navigation, geometry and
// the algebra layers, all keyed by decoration words.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "permutrees/correspond.hpp"
#include "permutrees/decoration.hpp"
#include "permutrees/errors.hpp"
#include "permutrees/permutree.hpp"

namespace py = pybind11;
using namespace permutrees;

PYBIND11_MODULE(_permutrees, m) {
    m.doc() = "decorated-tree combinatorics: counting, lattices, polytopes, algebras";

    py::register_exception<Error>(m, "PermutreesError", PyExc_ValueError);

    m.def("p_symbol_json", [](const std::string& decorated_perm) {
        return p_symbol(DecoratedPerm::parse(decorated_perm)).to_json().dump();
    }, py::arg("decorated_perm"),
       "insert a decorated permutation (\"2751346@values:odudodu\") and return "
       "the tree as JSON");

    m.def("congruent", [](const std::string& p, const std::string& q, const std::string& dec) {
        return congruent(perm_from_string(p), perm_from_string(q), Decoration(dec));
    }, py::arg("p"), py::arg("q"), py::arg("decoration"));

    m.def("tree_class_of", [](const std::string& decorated_perm) {
        auto cls = tree_class(p_symbol(DecoratedPerm::parse(decorated_perm)));
        std::vector<std::string> out;
        for (const auto& p : cls) out.push_back(perm_to_string(p));
        return out;
    }, py::arg("decorated_perm"));
}
