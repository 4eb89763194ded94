#include "capdyn/version.hpp"

namespace capdyn {

const char* version_string() {
#if defined(_OPENMP)
    return "capdyn " CAPDYN_VERSION " (C++20, openmp)";
#else
    return "capdyn " CAPDYN_VERSION " (C++20, serial)";
#endif
}

}  // namespace capdyn
