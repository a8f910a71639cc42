#pragma once

#include <string>

#include "rfh/floer.hpp"

namespace rfh::floer {

// JSON record: {"generators":[{"name","action","degree"?},...],
//               "boundary":[["target","source"],...]}
// with m(target, source) = 1, i.e. d(source) contains target.
std::string to_json(const FloerTriple& t);
FloerTriple from_json(const std::string& text);
FloerTriple load_triple(const std::string& path);
void save_triple(const FloerTriple& t, const std::string& path);

}  // namespace rfh::floer
