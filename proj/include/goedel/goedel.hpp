#pragma once

// Umbrella header.

#include "goedel/enumeration.hpp"
#include "goedel/errors.hpp"
#include "goedel/numbering.hpp"
#include "goedel/proofs.hpp"
#include "goedel/selfref.hpp"
#include "goedel/serialization.hpp"
#include "goedel/syntax.hpp"
