#pragma once

#include <string>

#include "wiretap/channels.hpp"
#include "wiretap/coding.hpp"
#include "wiretap/hashing.hpp"
#include "wiretap/xtx.hpp"

// Textual constructors for channels, codes, hash families and schemes, as
// accepted by the command-line tool and its config files.
//
//   channel:  bsc(p)[^c] | id(n) | const(n) | par(CH,CH)
//             | comp(OUTER,INNER) | matrix(path)
//   code:     rep(n) | rep(n,w) | id(n) | sys(parity,u) | genmatrix(path)
//   hash:     mx(u,m) | gf(u,m)
//   scheme:   xtx(hash=HASH, en1=CODE, en2=CODE)   keys in any order
//
// Any channel term accepts a trailing ^k for the k-fold independent
// product. Whitespace is free around every token. A path argument runs to
// the next ')', so paths may not contain one. Scheme keys must each appear
// exactly once. Malformed input raises ParseError with a 0-based character
// offset; arguments that parse but violate a constructor's contract
// surface that constructor's own error.

namespace wiretap {

Channel parse_channel(const std::string& text);
CodeFn parse_code(const std::string& text);
HashFamily parse_hash(const std::string& text);
XtXScheme parse_scheme(const std::string& text);

// matrix(path) payload: a header line `rows cols in_width out_width`
// followed by one probability row per input, lexicographic input order.
// Rows must sum to 1 within 1e-9.
Channel load_channel_matrix(const std::string& path);

// genmatrix(path) payload: a header line `rows cols` followed by one 0/1
// string of length cols per message bit, leading bit's row first.
CodeFn load_generator_matrix(const std::string& path);

}  // namespace wiretap
