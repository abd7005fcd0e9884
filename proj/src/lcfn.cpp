#include "cantor/lcfn.hpp"

// LcFn is a header-only template; this translation unit anchors the most
// used instantiations to keep link times down.
namespace cantor {
template class LcFn<double>;
template class LcFn<Rational>;
}  // namespace cantor
