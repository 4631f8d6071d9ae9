#pragma once

#include <string>

#include "fh/structure.hpp"

namespace fh {

struct AtomicType; // exquisite.hpp

// .fhs structure files: line-oriented, '#' comments, UTF-8.
//   structure <name>
//   arity <n>
//   group id | group sym | group gen <i1> ... <in>   (one gen line per generator)
//   elements <e1> <e2> ...                           (may repeat)
//   rel <e1> ... <en>                                (any orbit member)
//   end
FiniteStructure parse_structure(const std::string& text);
std::string serialize_structure(const FiniteStructure& s);

FiniteStructure load_structure(const std::string& path);
void save_structure(const FiniteStructure& s, const std::string& path);

// .fht atomic-type files:
//   type <name> / arity <n> / tail <l> / rel i j k  (0-based) / end
AtomicType parse_atomic_type(const std::string& text);
std::string serialize_atomic_type(const AtomicType& q);

AtomicType load_atomic_type(const std::string& path);
void save_atomic_type(const AtomicType& q, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace fh
