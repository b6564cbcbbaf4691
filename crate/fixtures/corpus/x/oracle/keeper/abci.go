package keeper

import (
	"time"

	roottypes "example.com/demochain/types"
)

// EndBlock folds the round's votes into the reference price.
func (k Keeper) EndBlock(ctx roottypes.Context) {
	if int64(len(k.votes)) < k.quorum {
		return
	}
	age := time.Since(k.lastUpdate) // want cosmos/system-time
	if age == 0 {
		return
	}
	for voter, vote := range k.votes { // want cosmos/map-iteration
		k.prices = append(k.prices, k.tally(voter, vote))
	}
	k.drainFeed()
}

// drainFeed pulls any prefetched price from the feed channel.
func (k Keeper) drainFeed() {
	select { // want cosmos/goroutine
	case p := <-k.feed:
		k.prices = append(k.prices, p)
	default:
	}
}
