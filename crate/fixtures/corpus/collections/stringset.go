// Package collections provides deterministic ordered containers for
// consensus code.
package collections

import "sort"

// StringSet is a set of strings whose iteration order is sorted and
// therefore replicated.
type StringSet struct {
	members map[string]bool
	order   []string
}

// NewStringSet returns an empty set.
func NewStringSet() *StringSet {
	return &StringSet{members: make(map[string]bool)}
}

// Add inserts a member, keeping the iteration order sorted.
func (s *StringSet) Add(v string) {
	if s.members[v] {
		return
	}
	s.members[v] = true
	s.order = append(s.order, v)
	sort.Strings(s.order)
}

// Has reports membership.
func (s *StringSet) Has(v string) bool {
	return s.members[v]
}

// Items returns the members in sorted order.
func (s *StringSet) Items() []string { // decoy cosmos/map-iteration: order slice, no map range
	return s.order
}
