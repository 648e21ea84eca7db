#pragma once

#include <string>
#include <utility>

#include "aut/gf.hpp"
#include "aut/matgroup.hpp"
#include "aut/preorder.hpp"
#include "aut/semilinear.hpp"

namespace aut::io {

// Line-oriented preorder spec format:
//   base = Z | N | NEGN
//   pattern = block(<size>, chain|full|antichain|pairs: (a,b);(c,d);...) [, block(...)]*
//   exception <blockcoord> = block(...)
//   sizes = semilinear{ finite = {n1,n2,...}; prog = (b,d);(b,d);... }
//   coarsen = { i1, i2, ... } | { ... } ...
// Indices are written "b:s", with plain integers accepted everywhere as flat
// positions (and printed for size-1-block specs).
pre::PreorderSpec parse_preorder(const std::string& text);
std::string print_preorder(const pre::PreorderSpec& spec);

// elem { q = <int>; scalar = <lit>; window = [<index>, ...]; core = [[...],...] }
std::pair<gf::Field, mat::WindowElement> parse_element(const std::string& text,
                                                       const pre::PreorderSpec& spec);
std::string print_element(const mat::WindowElement& e);

// mat { q = <int>; region = [<index>, ...]; entries = [[...],...] }
std::pair<gf::Field, mat::FiniteMatrix> parse_finite_matrix(const std::string& text,
                                                            const pre::PreorderSpec& spec);
std::string print_finite_matrix(const gf::Field& field, const mat::FiniteMatrix& m,
                                const pre::PreorderSpec& spec);

// semilinear{ finite = {…}; prog = (b,d);… }
inv::SemilinearSet parse_semilinear(const std::string& text);
std::string print_semilinear(const inv::SemilinearSet& s);

// "b:s" or flat integer.
pre::Index parse_index(const std::string& token, const pre::PreorderSpec& spec);
// "{i1, i2, ...}" or the chain shorthand "a..b"; "{}" is empty.
pre::IndexSet parse_index_set(const std::string& text, const pre::PreorderSpec& spec);
std::string print_index(const pre::PreorderSpec& spec, pre::Index i);
std::string print_index_set(const pre::PreorderSpec& spec, const pre::IndexSet& s);

}  // namespace aut::io
