#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace honda {

  //! Base class for every error thrown by the toolkit.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  //! A precondition on arguments was violated (mixed rings, bad index, ...).
  class UsageError : public Error {
   public:
    using Error::Error;
  };

  //! Input data failed a structural check (non-unimodular generator,
  //! non-closed element table, degree bound below dimension, ...).
  class ValidationError : public Error {
   public:
    using Error::Error;
  };

  //! A documented resource cap would be exceeded.
  class CapExceeded : public Error {
   public:
    CapExceeded(std::string const& what_cap, unsigned long long cap,
                unsigned long long required = 0)
        : Error(what_cap + " cap exceeded (cap " + std::to_string(cap)
                + (required != 0 ? ", required " + std::to_string(required)
                                 : std::string())
                + ")"),
          cap_(cap),
          required_(required) {}

    unsigned long long cap() const noexcept {
      return cap_;
    }
    //! 0 when the requirement is unknown (e.g. closure aborted mid-way).
    unsigned long long required() const noexcept {
      return required_;
    }

   private:
    unsigned long long cap_;
    unsigned long long required_;
  };

  //! Syntax error in formula or corpus text; line and column are 1-based.
  class ParseError : public Error {
   public:
    ParseError(std::string const& msg, std::size_t line, std::size_t column,
               std::string const& file = {})
        : Error((file.empty() ? std::string() : file + ":") + std::to_string(line)
                + ":" + std::to_string(column) + ": " + msg),
          message_(msg),
          file_(file),
          line_(line),
          column_(column) {}

    //! The message without the location prefix.
    std::string const& message() const noexcept {
      return message_;
    }
    std::string const& file() const noexcept {
      return file_;
    }

    std::size_t line() const noexcept {
      return line_;
    }
    std::size_t column() const noexcept {
      return column_;
    }

   private:
    std::string message_;
    std::string file_;
    std::size_t line_;
    std::size_t column_;
  };

}  // namespace honda
