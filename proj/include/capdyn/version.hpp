#pragma once

#define CAPDYN_VERSION "0.1.0"

namespace capdyn {

/// "capdyn <version> (<toolchain>, openmp|serial)"
const char* version_string();

}  // namespace capdyn
