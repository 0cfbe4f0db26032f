#include <pybind11/pybind11.h>
PYBIND11_MODULE(_gcore, m) { m.doc() = "stub"; }
