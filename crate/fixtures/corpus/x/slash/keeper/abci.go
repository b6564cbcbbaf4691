package keeper

import (
	"time"

	roottypes "example.com/demochain/types"
)

// BeginBlock advances the liveness window and jails offenders.
func (k Keeper) BeginBlock(ctx roottypes.Context) {
	k.tickWindow(ctx)
}

func (k Keeper) tickWindow(ctx roottypes.Context) {
	p := k.Params(ctx)
	window := int(p.SignedBlocksWindow) // want cosmos/platform-int
	if k.missed > int64(window) {
		panic("liveness invariant violated: missed count exceeds window") // want cosmos/block-panic
	}
	if k.missed*2 > p.SignedBlocksWindow {
		k.jail(p.JailSeconds)
	}
}

// jail records the moment the validator may rejoin.
func (k *Keeper) jail(seconds int64) {
	k.jailUntil = time.Now().Unix() + seconds // want cosmos/system-time
}
