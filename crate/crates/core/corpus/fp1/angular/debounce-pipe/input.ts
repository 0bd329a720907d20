import { Component, OnInit } from '@angular/core';
import { debounceTime } from 'rxjs/operators';
import { Search } from './search';

@Component({ selector: 'app-search', template: '' })
export class SearchComponent implements OnInit {
  results: string[] = [];

  constructor(private search: Search) {}

  ngOnInit() {
    this.search.results$.pipe(debounceTime(200)).subscribe(r => (this.results = r));
  }
}
