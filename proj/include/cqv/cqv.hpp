#pragma once

#include "cqv/chars.hpp"
#include "cqv/field.hpp"
#include "cqv/fock.hpp"
#include "cqv/relations.hpp"
#include "cqv/report.hpp"
#include "cqv/scalars.hpp"
#include "cqv/verify.hpp"
#include "cqv/young.hpp"
