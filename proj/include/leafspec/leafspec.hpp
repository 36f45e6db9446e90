#pragma once

#include "leafspec/conjecture.hpp"
#include "leafspec/constructions.hpp"
#include "leafspec/enumeration.hpp"
#include "leafspec/errors.hpp"
#include "leafspec/io.hpp"
#include "leafspec/limits.hpp"
#include "leafspec/sequences.hpp"
#include "leafspec/spectrum.hpp"
#include "leafspec/tree.hpp"
#include "leafspec/witness.hpp"
#include "leafspec/serialize.hpp"
