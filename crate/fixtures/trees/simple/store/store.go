package store

import "example.com/simple/util"

// Store keeps balances by address.
type Store struct {
	balances map[string]uint64
	scale    float64
}

func New() *Store {
	return &Store{balances: make(map[string]uint64)}
}

func (s *Store) Total() uint64 {
	var total uint64
	for _, v := range s.balances {
		total += v
	}
	return total
}

func (s *Store) Describe() string {
	return util.Label("store", int(s.Total()))
}
