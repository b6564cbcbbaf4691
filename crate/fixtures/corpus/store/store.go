// Package store provides the ordered key/value abstraction consensus code
// writes through. Iteration happens over a key slice kept sorted on write,
// so the visit order is identical on every node.
package store

import "sort"

// KVStore is an in-memory ordered store.
type KVStore struct {
	data map[string][]byte
	keys []string
}

// NewKVStore returns an empty store.
func NewKVStore() *KVStore {
	return &KVStore{data: make(map[string][]byte)}
}

// Set writes a key, keeping the key index sorted.
func (s *KVStore) Set(key string, value []byte) {
	if _, ok := s.data[key]; !ok {
		s.keys = append(s.keys, key)
		sort.Strings(s.keys)
	}
	s.data[key] = value
}

// Get reads a key.
func (s *KVStore) Get(key string) []byte {
	return s.data[key]
}

// Keys returns every key in ascending byte order. Callers range over the
// returned slice instead of the backing map.
func (s *KVStore) Keys() []string { // decoy cosmos/map-iteration: sorted index, no map range
	return s.keys
}
