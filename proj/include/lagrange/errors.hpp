#pragma once

#include <stdexcept>
#include <string>

namespace lagrange {

/* Every failure the library can signal carries a stable machine-readable
 * name (used by the CLI as the diagnostic tag and exit-code discriminator)
 * plus a human-readable message with the offending values baked in. */
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

struct CenterCollision : Error {
    explicit CenterCollision(const std::string& w) : Error("CenterCollision", w) {}
};
struct RegimeUnsupported : Error {
    explicit RegimeUnsupported(const std::string& w) : Error("RegimeUnsupported", w) {}
};
struct RootBracketFailure : Error {
    explicit RootBracketFailure(const std::string& w) : Error("RootBracketFailure", w) {}
};
struct GridTooCoarse : Error {
    explicit GridTooCoarse(const std::string& w) : Error("GridTooCoarse", w) {}
};
struct CollisionFiber : Error {
    explicit CollisionFiber(const std::string& w) : Error("CollisionFiber", w) {}
};
struct ChartSingular : Error {
    explicit ChartSingular(const std::string& w) : Error("ChartSingular", w) {}
};
struct NoTurningPoint : Error {
    explicit NoTurningPoint(const std::string& w) : Error("NoTurningPoint", w) {}
};
struct WindowViolation : Error {
    explicit WindowViolation(const std::string& w) : Error("WindowViolation", w) {}
};
struct QuadratureStall : Error {
    explicit QuadratureStall(const std::string& w) : Error("QuadratureStall", w) {}
};
struct RadicandNonpositive : Error {
    explicit RadicandNonpositive(const std::string& w) : Error("RadicandNonpositive", w) {}
};
struct EnergyNonnegative : Error {
    explicit EnergyNonnegative(const std::string& w) : Error("EnergyNonnegative", w) {}
};
struct LevelInadmissible : Error {
    explicit LevelInadmissible(const std::string& w) : Error("LevelInadmissible", w) {}
};
struct NoCrossing : Error {
    explicit NoCrossing(const std::string& w) : Error("NoCrossing", w) {}
};
struct ProfileTooSparse : Error {
    explicit ProfileTooSparse(const std::string& w) : Error("ProfileTooSparse", w) {}
};
struct NonMonotoneAbscissa : Error {
    explicit NonMonotoneAbscissa(const std::string& w) : Error("NonMonotoneAbscissa", w) {}
};

} // namespace lagrange
