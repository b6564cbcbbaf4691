// Package keeper halts the chain at upgrade heights until the new binary
// takes over.
package keeper

import roottypes "example.com/demochain/types"

// Keeper tracks pending upgrade plans and applied upgrades.
type Keeper struct {
	pending  map[int64]string
	applied  map[string]bool
	handlers map[string]bool
}

// BeginBlock halts the node if this height needs a handler it lacks. The
// halt is the designed behavior: every node panics at the same height.
func (k Keeper) BeginBlock(ctx roottypes.Context) {
	plan, ok := k.pending[ctx.Height]
	if !ok {
		return
	}
	if !k.handlers[plan] {
		panic("upgrade handler missing for plan " + plan) // want cosmos/block-panic
	}
	k.apply(plan)
}

func (k Keeper) apply(name string) {
	if k.applied[name] {
		panic("upgrade already applied: " + name) // want cosmos/block-panic
	}
	k.applied[name] = true
}
