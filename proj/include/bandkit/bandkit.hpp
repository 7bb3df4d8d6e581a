#ifndef BANDKIT_BANDKIT_HPP_
#define BANDKIT_BANDKIT_HPP_

#include "canonical.hpp"    // IWYU pragma: export
#include "finite_band.hpp"  // IWYU pragma: export
#include "io.hpp"           // IWYU pragma: export
#include "scheme.hpp"       // IWYU pragma: export
#include "varieties.hpp"    // IWYU pragma: export
#include "word.hpp"         // IWYU pragma: export

#endif  // BANDKIT_BANDKIT_HPP_
