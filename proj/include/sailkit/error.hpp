#pragma once

#include <stdexcept>
#include <string>

namespace sailkit {

enum class Err {
    NonSquarefree,
    DegenerateBiquadratic,
    DivisionByZero,
    WrongFieldKind,
    BoxTooLarge,
    NotASimplex,
    DegeneratePlane,
    UnsupportedDimension,
    DegenerateInput,
    WrongDegree,
    IncompleteSailData,
    WrongNorm,
    NoSuchUnit,
    MonogenicityUnknown,
    IndexOutOfRange,
    InvalidArgument,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::NonSquarefree: return "NonSquarefree";
        case Err::DegenerateBiquadratic: return "DegenerateBiquadratic";
        case Err::DivisionByZero: return "DivisionByZero";
        case Err::WrongFieldKind: return "WrongFieldKind";
        case Err::BoxTooLarge: return "BoxTooLarge";
        case Err::NotASimplex: return "NotASimplex";
        case Err::DegeneratePlane: return "DegeneratePlane";
        case Err::UnsupportedDimension: return "UnsupportedDimension";
        case Err::DegenerateInput: return "DegenerateInput";
        case Err::WrongDegree: return "WrongDegree";
        case Err::IncompleteSailData: return "IncompleteSailData";
        case Err::WrongNorm: return "WrongNorm";
        case Err::NoSuchUnit: return "NoSuchUnit";
        case Err::MonogenicityUnknown: return "MonogenicityUnknown";
        case Err::IndexOutOfRange: return "IndexOutOfRange";
        case Err::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class SailError : public std::runtime_error {
  public:
    SailError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}

    Err code() const { return code_; }

  private:
    Err code_;
};

}  // namespace sailkit
