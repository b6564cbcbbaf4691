// Package keeper advances epochs at block boundaries.
package keeper

import (
	"time"

	roottypes "example.com/demochain/types"
	"example.com/demochain/x/epochs/types"
)

// Keeper owns the epoch clock.
type Keeper struct {
	info      types.EpochInfo
	lastEpoch int64
}

// BeginBlock rolls the epoch over when its duration has elapsed.
func (k *Keeper) BeginBlock(ctx roottypes.Context) {
	now := time.Now().Unix() // want cosmos/system-time
	if now-k.lastEpoch < k.info.DurationSecs {
		return
	}
	k.lastEpoch = now
	k.info.CurrentEpoch++
	go k.snapshot(ctx.Height) // want cosmos/goroutine
}

// snapshot records the epoch boundary for pruning.
func (k *Keeper) snapshot(height int64) {
	k.info.StartHeight = height
}
