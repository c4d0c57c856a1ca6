#pragma once

#include "twoatom/closed_form.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/errors.hpp"
#include "twoatom/io.hpp"
#include "twoatom/qstate.hpp"
