import { Component, OnInit } from '@angular/core';
import { debounceTime } from 'rxjs/operators';
import { Search } from './search';
import { Subject, takeUntil } from 'rxjs';

@Component({ selector: 'app-search', template: '' })
export class SearchComponent implements OnInit {
  private readonly destroy$ = new Subject<void>();
  results: string[] = [];

  constructor(private search: Search) {}

  ngOnInit() {
    this.search.results$.pipe(debounceTime(200), takeUntil(this.destroy$)).subscribe(r => (this.results = r));
  }

  ngOnDestroy() {
    this.destroy$.next();
    this.destroy$.complete();
  }
}
