package keeper

import (
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/gov/types"
)

// EndBlock closes every proposal whose voting period ended this block.
func (k *Keeper) EndBlock(ctx roottypes.Context) {
	for id, prop := range k.active { // want cosmos/map-iteration
		k.finish(id, prop)
	}
	go k.archiveClosed() // want cosmos/goroutine
}

// finish applies the tally rule to one proposal.
func (k *Keeper) finish(id uint64, prop types.Proposal) {
	var quorum uint // want cosmos/platform-int
	quorum = 20
	if prop.Yes*100 >= prop.Total*int64(quorum) {
		k.passed = append(k.passed, prop.Title)
	}
	delete(k.active, id)
}

// archiveClosed ships closed proposals to the archive writer.
func (k *Keeper) archiveClosed() {
	for _, title := range k.passed {
		k.archive <- title
	}
}
