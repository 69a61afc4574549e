#ifndef EVAC_EVAC_HPP
#define EVAC_EVAC_HPP

#include "evac/bounds.hpp"
#include "evac/cli.hpp"
#include "evac/engine.hpp"
#include "evac/geometry.hpp"
#include "evac/knowledge.hpp"
#include "evac/model.hpp"
#include "evac/oracle.hpp"
#include "evac/protocol.hpp"
#include "evac/strategies.hpp"
#include "evac/trace.hpp"
#include "evac/verify.hpp"

#endif  // EVAC_EVAC_HPP
