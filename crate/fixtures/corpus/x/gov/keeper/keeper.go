// Package keeper implements proposal lifecycle and tallying.
package keeper

import (
	"example.com/demochain/collections"
	roottypes "example.com/demochain/types"
	"example.com/demochain/x/gov/types"
)

// Keeper owns the active proposal set.
type Keeper struct {
	active  map[uint64]types.Proposal
	passed  []string
	voters  *collections.StringSet
	nextID  uint64
	archive chan string
}

var _ types.MsgServer = Keeper{}

// SubmitProposal handles MsgSubmitProposal.
func (k *Keeper) SubmitProposal(ctx roottypes.Context, msg types.MsgSubmitProposal) error {
	k.active[k.nextID] = types.Proposal{Title: msg.Title}
	k.nextID++
	return nil
}

// VoteProposal handles MsgVoteProposal. Voter identities are deduplicated
// through a sorted set so later iteration is deterministic.
func (k *Keeper) VoteProposal(ctx roottypes.Context, msg types.MsgVoteProposal) error {
	if k.voters.Has(msg.Voter) {
		return nil
	}
	k.voters.Add(msg.Voter)
	prop := k.active[msg.ProposalID]
	prop.Total++
	if msg.Approve {
		prop.Yes++
	}
	k.active[msg.ProposalID] = prop
	return nil
}
