#ifndef REALWORD_ERRORS_HPP_
#define REALWORD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace realword {

  //! Base class of every error raised by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class DivisionByZero : public Error {
   public:
    DivisionByZero() : Error("division by zero") {}
  };

  class ParseError : public Error {
   public:
    using Error::Error;
  };

  class MalformedTrace : public Error {
   public:
    using Error::Error;
  };

  class ArityMismatch : public Error {
   public:
    using Error::Error;
  };

  class SemiDecidableOnly : public Error {
   public:
    using Error::Error;
  };

  class OracleUndefined : public Error {
   public:
    using Error::Error;
  };

  class ZeroScale : public Error {
   public:
    ZeroScale() : Error("m-letter with scale 0") {}
  };

  class CapExceeded : public Error {
   public:
    using Error::Error;
  };

  class IndexError : public Error {
   public:
    using Error::Error;
  };

}  // namespace realword

#endif  // REALWORD_ERRORS_HPP_
