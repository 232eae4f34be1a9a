#pragma once

// The textual group corpus.
//
//   # comment
//   group SL2_F3
//     modulus 3
//     dim 2
//     order 24                 # optional, checked after closure
//     gen [[1, 1], [0, 1]]
//     gen [[1, 0], [1, 1]]
//   end
//
// An entry lists either generators (`gen`, closed by breadth-first
// search) or a complete element table (`element`, validated as given),
// never both. See docs/corpus.md for the grammar.

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "honda/errors.hpp"
#include "honda/group.hpp"

namespace honda::cli {

  struct GroupSpec {
    std::string                 name;
    residue_type                modulus = 0;
    std::size_t                 dim     = 0;
    std::optional<std::size_t>  order;
    std::vector<SquareMatrix>   generators;
    std::vector<SquareMatrix>   elements;
    bool                        explicit_table = false;
    std::size_t                 line           = 0;  //!< line of the `group` keyword
  };

  namespace detail {
    //! Cursor over one line; columns are 1-based.
    class LineCursor {
     public:
      LineCursor(std::string_view text, std::size_t line) : s_(text), line_(line) {}

      void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
        if (pos_ < s_.size() && s_[pos_] == '#') {
          pos_ = s_.size();
        }
      }
      bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
      }
      std::size_t column() const noexcept {
        return pos_ + 1;
      }
      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, line_, column());
      }

      std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size()
               && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'
                   || s_[pos_] == '-')) {
          ++pos_;
        }
        if (start == pos_) {
          fail("expected a name");
        }
        return std::string(s_.substr(start, pos_ - start));
      }

      std::int64_t integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
          ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          ++pos_;
        }
        if (digits == pos_) {
          pos_ = start;
          fail("expected an integer");
        }
        if (pos_ - digits > 12) {
          pos_ = start;
          fail("integer too large");
        }
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
      }

      void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos_;
      }
      bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
          ++pos_;
          return true;
        }
        return false;
      }

     private:
      std::string_view s_;
      std::size_t      line_;
      std::size_t      pos_ = 0;
    };

    //! [[a, b], [c, d]]: a square list of integer rows.
    inline std::vector<std::vector<std::int64_t>> parse_rows(LineCursor& cur) {
      std::vector<std::vector<std::int64_t>> rows;
      cur.expect('[');
      do {
        cur.expect('[');
        std::vector<std::int64_t> row;
        do {
          row.push_back(cur.integer());
        } while (cur.accept(','));
        cur.expect(']');
        rows.push_back(std::move(row));
      } while (cur.accept(','));
      cur.expect(']');
      return rows;
    }

    inline SquareMatrix to_matrix(std::vector<std::vector<std::int64_t>> const& rows,
                                  residue_type                                  modulus,
                                  std::size_t                                   dim,
                                  LineCursor const&                             cur) {
      if (rows.size() != dim) {
        cur.fail("matrix has " + std::to_string(rows.size()) + " rows, expected "
                 + std::to_string(dim));
      }
      std::vector<std::int64_t> flat;
      for (auto const& row : rows) {
        if (row.size() != dim) {
          cur.fail("matrix row has " + std::to_string(row.size()) + " entries, expected "
                   + std::to_string(dim));
        }
        flat.insert(flat.end(), row.begin(), row.end());
      }
      return SquareMatrix::from_rows(ResidueRing(modulus), dim, flat);
    }
  }  // namespace detail

  //! Parses a matrix literal such as "[[1, 1], [0, 1]]" given the ring and
  //! dimension; used for generators passed on the command line.
  inline SquareMatrix parse_matrix(std::string_view text, residue_type modulus, std::size_t dim) {
    detail::LineCursor cur(text, 1);
    auto               rows = detail::parse_rows(cur);
    SquareMatrix       M    = detail::to_matrix(rows, modulus, dim, cur);
    if (!cur.at_end()) {
      cur.fail("unexpected text after matrix");
    }
    return M;
  }

  inline std::vector<GroupSpec> parse_corpus(std::string_view text) {
    std::vector<GroupSpec>   out;
    std::optional<GroupSpec> cur_spec;
    std::size_t              line_no = 0;
    std::size_t              start   = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++line_no;
      detail::LineCursor cur(text.substr(start, end - start), line_no);
      start = end + 1;
      if (cur.at_end()) {
        if (end == text.size()) {
          break;
        }
        continue;
      }
      std::size_t const kw_col = cur.column();
      std::string const kw     = cur.word();
      auto need_entry          = [&] {
        if (!cur_spec) {
          throw ParseError("'" + kw + "' outside a group entry", line_no, kw_col);
        }
      };
      auto need_header = [&] {
        need_entry();
        if (cur_spec->modulus == 0 || cur_spec->dim == 0) {
          throw ParseError("'modulus' and 'dim' must precede matrices", line_no, kw_col);
        }
      };
      if (kw == "group") {
        if (cur_spec) {
          throw ParseError("missing 'end' for group " + cur_spec->name, line_no, kw_col);
        }
        cur_spec.emplace();
        cur_spec->name = cur.word();
        cur_spec->line = line_no;
        for (auto const& g : out) {
          if (g.name == cur_spec->name) {
            throw ParseError("duplicate group name " + g.name, line_no, kw_col);
          }
        }
      } else if (kw == "modulus") {
        need_entry();
        std::size_t  col = cur.column();
        std::int64_t m   = cur.integer();
        if (m < 2 || m > 65535) {
          throw ParseError("modulus must be between 2 and 65535", line_no, col);
        }
        cur_spec->modulus = static_cast<residue_type>(m);
      } else if (kw == "dim") {
        need_entry();
        std::size_t  col = cur.column();
        std::int64_t n   = cur.integer();
        if (n < 1 || n > static_cast<std::int64_t>(SquareMatrix::max_dim)) {
          throw ParseError("dim must be between 1 and " + std::to_string(SquareMatrix::max_dim),
                           line_no, col);
        }
        cur_spec->dim = static_cast<std::size_t>(n);
      } else if (kw == "order") {
        need_entry();
        std::size_t  col = cur.column();
        std::int64_t o   = cur.integer();
        if (o < 1) {
          throw ParseError("order must be positive", line_no, col);
        }
        cur_spec->order = static_cast<std::size_t>(o);
      } else if (kw == "gen" || kw == "element") {
        need_header();
        bool const table = kw == "element";
        if ((table && !cur_spec->generators.empty())
            || (!table && cur_spec->explicit_table)) {
          throw ParseError("an entry lists either generators or elements, not both",
                           line_no, kw_col);
        }
        auto rows = detail::parse_rows(cur);
        auto M    = detail::to_matrix(rows, cur_spec->modulus, cur_spec->dim, cur);
        if (table) {
          cur_spec->explicit_table = true;
          cur_spec->elements.push_back(M);
        } else {
          cur_spec->generators.push_back(M);
        }
      } else if (kw == "end") {
        need_entry();
        if (cur_spec->modulus == 0 || cur_spec->dim == 0) {
          throw ParseError("group " + cur_spec->name + " lacks 'modulus' or 'dim'", line_no,
                           kw_col);
        }
        out.push_back(std::move(*cur_spec));
        cur_spec.reset();
      } else {
        throw ParseError("unknown keyword '" + kw + "'", line_no, kw_col);
      }
      if (!cur.at_end()) {
        cur.fail("unexpected text at end of line");
      }
    }
    if (cur_spec) {
      throw ParseError("missing 'end' for group " + cur_spec->name, line_no, 1);
    }
    return out;
  }

  //! Reads and parses a corpus file; parse errors are prefixed by the path.
  inline std::vector<GroupSpec> load_corpus(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot open corpus file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return parse_corpus(ss.str());
    } catch (ParseError const& e) {
      throw ParseError(e.message(), e.line(), e.column(), path);
    }
  }

  //! The GroupTable of an entry. Generator lists are closed under
  //! multiplication (at most `cap` elements); element tables must already
  //! be groups. A declared order must match.
  inline GroupTable build_group(GroupSpec const& spec, std::size_t cap = default_closure_cap) {
    ResidueRing ring(spec.modulus);
    auto        where = "group " + spec.name + " (line " + std::to_string(spec.line) + "): ";
    try {
      GroupTable G = spec.explicit_table
                         ? group_from_elements(ring, spec.dim, spec.elements)
                         : close_generators(ring, spec.dim, spec.generators, cap);
      if (spec.order && *spec.order != G.size()) {
        throw ValidationError("has " + std::to_string(G.size())
                              + " elements, declared order "
                              + std::to_string(*spec.order));
      }
      return G;
    } catch (ValidationError const& e) {
      throw ValidationError(where + e.what());
    }
  }

}  // namespace honda::cli
