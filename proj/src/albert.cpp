#include "e6iso/albert.hpp"

namespace e6iso {

const char* tag_name(ElementTag t) {
  switch (t) {
    case ElementTag::invertible: return "invertible";
    case ElementTag::singular: return "singular";
    case ElementTag::nilpotent_sqzero: return "nilpotent_sqzero";
    case ElementTag::nilpotent_cube: return "nilpotent_cube";
    case ElementTag::other_rank2: return "other_rank2";
  }
  return "unknown";
}

}  // namespace e6iso
