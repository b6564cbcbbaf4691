// Package types defines governance proposals and messages.
package types

import roottypes "example.com/demochain/types"

// Proposal is a live governance question.
type Proposal struct {
	Title string
	Yes   int64
	Total int64
}

// MsgSubmitProposal opens a new proposal.
type MsgSubmitProposal struct {
	Proposer string
	Title    string
}

// MsgVoteProposal records one vote.
type MsgVoteProposal struct {
	Voter      string
	ProposalID uint64
	Approve    bool
}

// MsgServer handles the governance module's transactions.
type MsgServer interface {
	SubmitProposal(ctx roottypes.Context, msg MsgSubmitProposal) error
	VoteProposal(ctx roottypes.Context, msg MsgVoteProposal) error
}
