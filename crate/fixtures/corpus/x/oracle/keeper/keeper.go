// Package keeper aggregates oracle votes into a consensus price.
package keeper

import (
	"time"

	roottypes "example.com/demochain/types"
	"example.com/demochain/x/oracle/types"
)

// Keeper owns the current voting round.
type Keeper struct {
	votes      map[string]types.Vote
	prices     []int64
	feed       chan int64
	quorum     int64
	lastUpdate time.Time
}

var _ types.MsgServer = Keeper{}

// SubmitVote handles MsgSubmitVote.
func (k Keeper) SubmitVote(ctx roottypes.Context, msg types.MsgSubmitVote) error {
	k.votes[msg.Voter] = types.Vote{Voter: msg.Voter, Price: msg.Price}
	return nil
}

func (k Keeper) tally(voter string, vote types.Vote) int64 {
	if voter == types.FeedAdmin {
		return vote.Price * 2
	}
	return vote.Price
}
